//! Finite limits and colimits in `A(T)`.
//!
//! Colimits are computed naively: cokernels of nubs and vertices, with the induced
//! structure map. Limits are computed on nubs and vertices and the structure map is
//! recovered by solving against the vertex inclusion.

use crate::error::{Error, Result};
use crate::euler::map_hmat;
use crate::exactlin::matrix::subspace;
use crate::exactlin::rat::one;
use crate::exactlin::{Matrix, Rat};
use crate::germ::{union_indices, Germ};

use super::{graded_basis, map_ring, TMap, TObject, TPart};

pub fn coproduct(objs: &[TObject]) -> Result<TObject> {
    let mut out = TObject::zero();
    if let Some(first) = objs.first() {
        out.ring = first.ring;
    }
    for o in objs {
        out = out.direct_sum(o)?;
    }
    Ok(out)
}

/// Finite products agree with coproducts.
pub fn product(objs: &[TObject]) -> Result<TObject> {
    coproduct(objs)
}

/// Cokernel of `f : A -> B`, with the quotient map `B -> coker f`.
pub fn cokernel_t(f: &TMap, a: &TObject, b: &TObject) -> Result<(TObject, TMap)> {
    f.validate(a, b)?;
    let t = f.degree;
    // vertex: V_B / im φ, degree by degree
    let img_deg: Vec<i64> = a.vertex.iter().map(|v| v + t).collect();
    let (sub_deg, sub) = graded_basis(&b.vertex, &f.phi, &img_deg);
    let mut degs = b.vertex.clone();
    degs.sort();
    degs.dedup();
    let mut q_rows: Vec<Vec<Rat>> = Vec::new();
    let mut vertex = Vec::new();
    for d in degs {
        let amb: Vec<usize> = (0..b.vertex.len()).filter(|&l| b.vertex[l] == d).collect();
        let cols: Vec<usize> = (0..sub_deg.len()).filter(|&j| sub_deg[j] == d).collect();
        let local = sub.select(&amb, &cols);
        let q = subspace::quotient_map(amb.len(), &local);
        for r in 0..q.rows() {
            let mut row = vec![crate::exactlin::rat::zero(); b.vertex.len()];
            for (x, &l) in amb.iter().enumerate() {
                row[l] = q.get(r, x).clone();
            }
            q_rows.push(row);
            vertex.push(d);
        }
    }
    let q = if q_rows.is_empty() {
        Matrix::zeros(0, b.vertex.len())
    } else {
        Matrix::from_rows(q_rows)
    };
    let idx = union_indices(&[&a.indices(), &b.indices(), &f.theta.indices()]);
    let parts = Germ::tabulate(&idx, |i| {
        let (sp, tp) = (&a.part(i).nub, &b.part(i).nub);
        let th = map_hmat(tp, sp, t, f.theta.get(i).clone());
        TPart {
            nub: tp.cokernel_of(&th),
            beta: q.mul(&b.part(i).beta),
        }
    });
    let out = TObject {
        ring: b.ring,
        vertex,
        parts,
    };
    out.validate().map_err(|e| e.context("cokernel"))?;
    let proj = TMap {
        degree: 0,
        theta: out.parts.map(|p| Matrix::identity(p.nub.ngens())),
        phi: q,
    };
    Ok((out, proj))
}

/// Kernel of `f : A -> B`, with the inclusion `ker f -> A`.
pub fn kernel_t(f: &TMap, a: &TObject, b: &TObject) -> Result<(TObject, TMap)> {
    f.validate(a, b)?;
    let t = f.degree;
    // vertex: ker φ degree by degree
    let mut degs = a.vertex.clone();
    degs.sort();
    degs.dedup();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    let mut vertex = Vec::new();
    for d in degs {
        let src: Vec<usize> = (0..a.vertex.len()).filter(|&m| a.vertex[m] == d).collect();
        let tgt: Vec<usize> = (0..b.vertex.len()).filter(|&l| b.vertex[l] == d + t).collect();
        let k = f.phi.select(&tgt, &src).kernel();
        for j in 0..k.cols() {
            let mut col = vec![crate::exactlin::rat::zero(); a.vertex.len()];
            for (x, &m) in src.iter().enumerate() {
                col[m] = k.get(x, j).clone();
            }
            cols.push(col);
            vertex.push(d);
        }
    }
    let incl_v = Matrix::from_cols(a.vertex.len(), &cols);
    let idx = union_indices(&[&a.indices(), &b.indices(), &f.theta.indices()]);
    let pieces = Germ::try_tabulate(&idx, |i| -> Result<(TPart, Matrix)> {
        let (sp, tp) = (&a.part(i).nub, &b.part(i).nub);
        let ring = a.nub_ring(i);
        let th = map_hmat(tp, sp, t, f.theta.get(i).clone());
        let (nub, incl) = if map_ring(ring, b.nub_ring(i)).is_none() {
            // only the zero map exists
            (sp.clone(), crate::exactlin::HMat::new(sp.gens.clone(), sp.gens.clone(), Matrix::identity(sp.ngens())))
        } else {
            sp.kernel_of(tp, &th, t, ring)?
        };
        let image = a.part(i).beta.mul(&incl.m);
        let beta = incl_v
            .solve_matrix(&image)
            .ok_or_else(|| Error::defect(format!("kernel structure map leaves the vertex kernel at {i}")))?;
        Ok((TPart { nub, beta }, incl.m))
    })?;
    let out = TObject {
        ring: a.ring,
        vertex,
        parts: pieces.map(|p| p.0.clone()),
    };
    out.validate().map_err(|e| e.context("kernel"))?;
    let incl = TMap {
        degree: 0,
        theta: pieces.map(|p| p.1.clone()),
        phi: incl_v,
    };
    Ok((out, incl))
}

fn stack_maps(maps: &[(&TMap, &TObject, &TObject)], negate_second: bool, horizontal: bool) -> TMap {
    let neg = -one();
    let scaled: Vec<TMap> = maps
        .iter()
        .enumerate()
        .map(|(n, (m, _, _))| if n == 1 && negate_second { m.scale(&neg) } else { (*m).clone() })
        .collect();
    let join = |x: &Matrix, y: &Matrix| if horizontal { x.hstack(y) } else { x.vstack(y) };
    let theta = scaled[0].theta.zip(&scaled[1].theta, join);
    TMap {
        degree: scaled[0].degree,
        theta,
        phi: join(&scaled[0].phi, &scaled[1].phi),
    }
}

/// Pullback of `f : A -> C <- B : g`, as the kernel of `(f, -g) : A ⊕ B -> C`.
pub fn pullback_t(f: &TMap, a: &TObject, g: &TMap, b: &TObject, c: &TObject) -> Result<(TObject, TMap)> {
    if f.degree != g.degree {
        return Err(Error::invalid("pullback of maps of different degrees"));
    }
    let ab = a.direct_sum(b)?;
    let h = full_theta(stack_maps(&[(f, a, c), (g, b, c)], true, true), &[a, b], c, true);
    kernel_t(&h, &ab, c)
}

/// Pushout of `A <- C -> B`, as the cokernel of `(f; -g) : C -> A ⊕ B`.
pub fn pushout_t(f: &TMap, a: &TObject, g: &TMap, b: &TObject, c: &TObject) -> Result<(TObject, TMap)> {
    if f.degree != g.degree {
        return Err(Error::invalid("pushout of maps of different degrees"));
    }
    let ab = a.direct_sum(b)?;
    let h = full_theta(stack_maps(&[(f, c, a), (g, c, b)], true, false), &[a, b], c, false);
    cokernel_t(&h, c, &ab)
}

/// Germ zips drop positions where both inputs agree with their generic value; rebuild
/// `θ` so every position has the right shape.
fn full_theta(h: TMap, parts: &[&TObject], c: &TObject, horizontal: bool) -> TMap {
    let mut lists: Vec<Vec<u64>> = parts.iter().map(|o| o.indices()).collect();
    lists.push(c.indices());
    lists.push(h.theta.indices());
    let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
    let idx = union_indices(&refs);
    let theta = Germ::tabulate(&idx, |i| {
        let m = h.theta.get(i).clone();
        let want = parts.iter().map(|o| o.part(i).nub.ngens()).sum::<usize>();
        let got = if horizontal { m.cols() } else { m.rows() };
        assert_eq!(want, got, "stacked nub map has the wrong shape at {i}");
        m
    });
    TMap { theta, ..h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{AdmissibleRep, BaseRing, FpModule, QcPresentation};
    use crate::germ::Index;
    use crate::exactlin::Ring;
    use crate::model_t::{hom_set, rep_sphere, s0};

    #[test]
    fn cokernel_of_euler_class() {
        // S^0 -> S^{z}: cokernel is e(Q[c]/c) at component 1
        let sv = rep_sphere(&AdmissibleRep::new(vec![1]).unwrap());
        let f = hom_set(&s0(), &sv, 0).unwrap().basis[0].clone();
        let (q, _) = cokernel_t(&f, &s0(), &sv).unwrap();
        assert!(q.vertex.is_empty());
        assert_eq!(q.part(Index::At(1)).nub.dim(2, Ring::Poly), 1);
        assert_eq!(q.part(Index::At(1)).nub.dim(0, Ring::Poly), 0);
        assert_eq!(q.part(Index::At(2)).nub.dim(0, Ring::Poly), 0);
        assert_eq!(q.part(Index::Generic).nub.dim(0, Ring::Poly), 0);
        let (k, _) = kernel_t(&f, &s0(), &sv).unwrap();
        assert!(k.nub().is_zero().unwrap() && k.vertex.is_empty());
    }

    #[test]
    fn kernel_of_projection() {
        let e = {
            let t = FpModule::new(BaseRing::OF, Germ::single(1, QcPresentation::cyclic_torsion(0, 1), QcPresentation::zero())).unwrap();
            crate::model_t::make_t(&t, vec![], &t.comps.map(|p| Matrix::zeros(0, p.ngens()))).unwrap()
        };
        let f = hom_set(&s0(), &e, 0).unwrap().basis[0].clone();
        let (k, incl) = kernel_t(&f, &s0(), &e).unwrap();
        incl.validate(&k, &s0()).unwrap();
        assert_eq!(k.part(Index::At(1)).nub.gens, vec![-2]);
        assert_eq!(k.vertex, vec![0]);
    }

    #[test]
    fn pullback_and_pushout_of_identities() {
        let s = s0();
        let id = TMap::identity(&s);
        let (p, _) = pullback_t(&id, &s, &id, &s, &s).unwrap();
        assert_eq!(p.profile(&[Index::At(1), Index::Generic], -4, 4), s.profile(&[Index::At(1), Index::Generic], -4, 4));
        let (q, _) = pushout_t(&id, &s, &id, &s, &s).unwrap();
        assert_eq!(q.profile(&[Index::At(1), Index::Generic], -4, 4), s.profile(&[Index::At(1), Index::Generic], -4, 4));
        let c = coproduct(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(c.vertex.len(), 2);
    }
}
