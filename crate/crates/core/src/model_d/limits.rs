//! Finite limits and colimits in `A(D)`.
//!
//! Colimits are stalkwise. For a finite limit the part at infinity is
//! `colim_N lim_i ⋔_N^W V^i`; in germ form the germ of a section is determined by its
//! value at infinity, so this is the limit of the `V^i_∞` and everything is computed
//! stalkwise as well.

use crate::error::{Error, Result};
use crate::exactlin::cxmaps::{self, section};
use crate::exactlin::rat::one;
use crate::exactlin::{GradedMap, WChainCx, WMap};
use crate::germ::{Germ, Index};

use super::{positions, DMap, DObject};

pub fn coproduct_d(objs: &[DObject]) -> DObject {
    objs.iter().fold(DObject::zero(), |acc, o| acc.direct_sum(o))
}

/// Finite products agree with coproducts.
pub fn product_d(objs: &[DObject]) -> DObject {
    coproduct_d(objs)
}

/// Per-degree solve of `base · x = m`, as a graded map into the source of `base`.
fn factor_through(base: &GradedMap, m: &GradedMap) -> Result<GradedMap> {
    let mut out = GradedMap::zero(m.source.clone(), base.source.clone(), 0);
    for n in m.source.degrees() {
        let x = base
            .block(n)
            .solve_matrix(&m.block(n))
            .ok_or_else(|| Error::defect(format!("structure map does not factor in degree {n}")))?;
        out.set_block(n, x);
    }
    Ok(out)
}

fn stalk_kernel(f: &WMap, a: &WChainCx) -> Result<(WChainCx, WMap)> {
    let (p, ip) = cxmaps::kernel(&f.plus, &a.plus)?;
    let (m, im) = cxmaps::kernel(&f.minus, &a.minus)?;
    Ok((WChainCx::new(p, m), WMap { plus: ip, minus: im }))
}

fn stalk_cokernel(f: &WMap, b: &WChainCx) -> Result<(WChainCx, WMap)> {
    let (p, qp) = cxmaps::cokernel(&f.plus, &b.plus)?;
    let (m, qm) = cxmaps::cokernel(&f.minus, &b.minus)?;
    Ok((WChainCx::new(p, m), WMap { plus: qp, minus: qm }))
}

fn split<A: Clone + PartialEq, B: Clone + PartialEq>(g: &Germ<(A, B)>) -> (Germ<A>, Germ<B>) {
    (g.map(|x| x.0.clone()), g.map(|x| x.1.clone()))
}

fn indices_of(ps: &[Index]) -> Vec<u64> {
    ps.iter()
        .filter_map(|i| match i {
            Index::At(k) => Some(*k),
            Index::Generic => None,
        })
        .collect()
}

/// The kernel of `f : A -> B` with its inclusion.
pub fn kernel_d(f: &DMap, a: &DObject, b: &DObject) -> Result<(DObject, DMap)> {
    f.validate(a, b)?;
    let idx = indices_of(&positions(&[a, b], &[f]));
    let (infty, incl_inf) = cxmaps::kernel(&f.infty, &a.infty)?;
    let pieces = Germ::try_tabulate(&idx, |i| stalk_kernel(f.stalks.get(i), a.stalks.get(i)))?;
    let (stalks, incl) = split(&pieces);
    let sigma = factor_through(&incl.generic().plus, &a.sigma.compose(&incl_inf))?;
    let out = DObject { stalks, infty, sigma };
    out.validate().map_err(|e| e.context("kernel"))?;
    Ok((out, DMap { infty: incl_inf, stalks: incl }))
}

/// The cokernel of `f : A -> B` with its projection.
pub fn cokernel_d(f: &DMap, a: &DObject, b: &DObject) -> Result<(DObject, DMap)> {
    f.validate(a, b)?;
    let idx = indices_of(&positions(&[a, b], &[f]));
    let (infty, proj_inf) = cxmaps::cokernel(&f.infty, &b.infty)?;
    let pieces = Germ::try_tabulate(&idx, |i| stalk_cokernel(f.stalks.get(i), b.stalks.get(i)))?;
    let (stalks, proj) = split(&pieces);
    let through = proj.generic().plus.compose(&b.sigma);
    let mut sigma = GradedMap::zero(infty.spaces().clone(), stalks.generic().plus.spaces().clone(), 0);
    for n in infty.spaces().degrees() {
        let s = section(&proj_inf.block(n))?;
        sigma.set_block(n, through.block(n).mul(&s));
    }
    let out = DObject { stalks, infty, sigma };
    out.validate().map_err(|e| e.context("cokernel"))?;
    Ok((out, DMap { infty: proj_inf, stalks: proj }))
}

fn join(f: &GradedMap, g: &GradedMap, horizontal: bool) -> GradedMap {
    let (source, target) = if horizontal {
        (f.source.direct_sum(&g.source), f.target.clone())
    } else {
        (f.source.clone(), f.target.direct_sum(&g.target))
    };
    let mut out = GradedMap::zero(source.clone(), target, 0);
    for n in source.degrees() {
        let (x, y) = (f.block(n), g.block(n));
        out.set_block(n, if horizontal { x.hstack(&y) } else { x.vstack(&y) });
    }
    out
}

fn join_maps(f: &DMap, g: &DMap, objs: &[&DObject], horizontal: bool) -> DMap {
    let neg = -one();
    let g = g.scale(&neg);
    let idx = indices_of(&positions(objs, &[f, &g]));
    DMap {
        infty: join(&f.infty, &g.infty, horizontal),
        stalks: Germ::tabulate(&idx, |i| {
            let (x, y) = (f.stalks.get(i), g.stalks.get(i));
            WMap {
                plus: join(&x.plus, &y.plus, horizontal),
                minus: join(&x.minus, &y.minus, horizontal),
            }
        }),
    }
}

/// Pullback of `A -f-> C <-g- B`, as the kernel of `(f, -g)`.
pub fn pullback_d(f: &DMap, a: &DObject, g: &DMap, b: &DObject, c: &DObject) -> Result<(DObject, DMap)> {
    let ab = a.direct_sum(b);
    let h = join_maps(f, g, &[a, b, c], true);
    kernel_d(&h, &ab, c)
}

/// Pushout of `A <-f- C -g-> B`, as the cokernel of `(f; -g)`.
pub fn pushout_d(f: &DMap, a: &DObject, g: &DMap, b: &DObject, c: &DObject) -> Result<(DObject, DMap)> {
    let ab = a.direct_sum(b);
    let h = join_maps(f, g, &[a, b, c], false);
    cokernel_d(&h, c, &ab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{ChainCx, GradedVec, WVec};
    use crate::model_d::{c, hom_ext, i_inf, i_k, unit_d};

    fn q0() -> ChainCx {
        ChainCx::graded(GradedVec::concentrated(0, 1))
    }

    #[test]
    fn coproduct_of_point_and_infinity() {
        let r = WChainCx::graded(&WVec::regular_power(1, 0));
        let s = coproduct_d(&[i_k(2, r.clone()), i_inf(q0())]);
        assert_eq!(s.stalks.indices(), vec![2]);
        assert_eq!(s.stalk(2), &r);
        assert_eq!(s.infty, q0());
    }

    #[test]
    fn pullback_of_identities() {
        let v = c(q0()).direct_sum(&i_k(1, WChainCx::graded(&WVec::regular_power(2, 1))));
        let id = DMap::identity(&v);
        let (p, incl) = pullback_d(&id, &v, &id, &v, &v).unwrap();
        incl.validate(&p, &v.direct_sum(&v)).unwrap();
        assert_eq!(p.infty.spaces(), v.infty.spaces());
        assert_eq!(p.stalk_spaces(Index::At(1)), v.stalk_spaces(Index::At(1)));
        assert_eq!(p.stalk_spaces(Index::Generic), v.stalk_spaces(Index::Generic));
        let (q, _) = pushout_d(&id, &v, &id, &v, &v).unwrap();
        assert_eq!(q.stalk_spaces(Index::At(1)), v.stalk_spaces(Index::At(1)));
        assert_eq!(hom_ext(&q, &v).unwrap().hom, hom_ext(&v, &v).unwrap().hom);
    }

    #[test]
    fn product_with_point_at_infinity() {
        let p = product_d(&[unit_d(), i_inf(q0())]);
        assert_eq!(p.infty.spaces().dim(0), 2);
        assert_eq!(p.stalk_spaces(Index::Generic).total().dim(0), 1);
        // maps from cQ into the product are pairs of maps into each factor
        let into = hom_ext(&unit_d(), &p).unwrap().hom;
        let a = hom_ext(&unit_d(), &unit_d()).unwrap().hom;
        let b = hom_ext(&unit_d(), &i_inf(q0())).unwrap().hom;
        assert_eq!(into.infinity.dim(0), a.infinity.dim(0) + b.infinity.dim(0));
        assert_eq!(into.generic_sum, a.generic_sum.direct_sum(&b.generic_sum));
    }

    #[test]
    fn kernel_and_cokernel_of_unit_to_infinity() {
        // cQ -> i_∞Q, identity at infinity: kernel is the tails part, cokernel vanishes
        let u = unit_d();
        let t = i_inf(q0());
        let mut f = DMap::zero(&u, &t);
        f.infty = GradedMap::identity(q0().spaces());
        let (k, _) = kernel_d(&f, &u, &t).unwrap();
        assert!(k.infty.spaces().is_zero());
        assert_eq!(k.stalk_spaces(Index::Generic).plus.dim(0), 1);
        let (q, _) = cokernel_d(&f, &u, &t).unwrap();
        assert!(q.is_zero());
    }
}
