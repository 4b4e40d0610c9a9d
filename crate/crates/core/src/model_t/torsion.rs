//! The right adjoint `g`, the torsion part `e` and the vertex functor `f`.
//!
//! `g(N)` has vertex `E⁻¹N` summed over all components, which is infinite dimensional
//! unless `N` is Euler torsion. [`g_truncated`] computes it over components `1..=K`
//! and a degree window, where everything is finite: the nub in degree `d` at component
//! `k` is the pullback of `N_d -> E⁻¹N_d <- ⊕_{e ≡ d} E⁻¹N_e`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::euler::{BaseRing, FpModule, QcPresentation};
use crate::exactlin::{linear_pullback, Matrix, Pullback, Ring};
use crate::germ::{Germ, Index};

use super::{TObject, TPart};

/// `g(N)` for Euler torsion `N`, which is `e(N) = (N -> 0)`.
pub fn g(n: &FpModule) -> Result<TObject> {
    if !n.is_euler_torsion()? {
        return Err(Error::unsupported(
            "g of a module that is not Euler torsion has an infinite vertex; use g_truncated",
        ));
    }
    Ok(TObject {
        ring: n.ring,
        vertex: Vec::new(),
        parts: n.comps.map(|p| TPart {
            nub: p.clone(),
            beta: Matrix::zeros(0, p.ngens()),
        }),
    })
}

/// The object `e(N) = (N -> 0)` for the torsion summands of `A`'s nub.
pub fn e_kernel(a: &TObject) -> Result<FpModule> {
    let comps = a.parts.try_map(|i, p| -> Result<QcPresentation> {
        let mut out = QcPresentation::zero();
        for (d, m) in p.nub.torsion_summands(a.nub_ring(i))? {
            out = out.direct_sum(&QcPresentation::cyclic_torsion(d, m));
        }
        Ok(out)
    })?;
    FpModule::new(BaseRing::OF, comps)
}

/// `f(V) = (E⁻¹O_F ⊗ V -> E⁻¹O_F ⊗ V)` with the identity structure map.
pub fn f_vertex(v: &[i64]) -> TObject {
    TObject {
        ring: BaseRing::Localized,
        vertex: v.to_vec(),
        parts: Germ::constant(TPart {
            nub: QcPresentation::free(v.to_vec()),
            beta: Matrix::identity(v.len()),
        }),
    }
}

/// `g(N)` over components `1..=truncation` and degrees `window.0..=window.1`.
#[derive(Clone, Debug)]
pub struct GTruncated {
    pub truncation: u64,
    pub window: (i64, i64),
    /// Nub dimension by degree.
    pub nub_dims: BTreeMap<i64, usize>,
    /// Vertex dimension by degree.
    pub vertex_dims: BTreeMap<i64, usize>,
    locals: BTreeMap<(u64, i64), Local>,
}

#[derive(Clone, Debug)]
struct Local {
    q_n: Matrix,
    lift_n: Matrix,
    q_e: Matrix,
    lift_e: Matrix,
    /// `E⁻¹N_e` for the window degrees `e ≡ d`, in order.
    block: Vec<i64>,
    pull: Pullback,
}

fn same_parity(window: (i64, i64), d: i64) -> Vec<i64> {
    (window.0..=window.1).filter(|e| (e - d).rem_euclid(2) == 0).collect()
}

fn local(n: &QcPresentation, d: i64, window: (i64, i64)) -> Result<Local> {
    let q_n = n.quotient_map(d, Ring::Poly);
    let lift_n = n.basis_lifts(d, Ring::Poly);
    let q_e = n.quotient_map(d, Ring::Laurent);
    let lift_e = n.basis_lifts(d, Ring::Laurent);
    let to_e = q_e.mul(&lift_n);
    let block = same_parity(window, d);
    let mut m = Matrix::zeros(q_e.rows(), 0);
    for &e in &block {
        m = m.hstack(&q_e.mul(&n.basis_lifts(e, Ring::Laurent)));
    }
    let pull = linear_pullback(&to_e, &m)?;
    Ok(Local {
        q_n,
        lift_n,
        q_e,
        lift_e,
        block,
        pull,
    })
}

pub fn g_truncated(n: &FpModule, truncation: u64, window: (i64, i64)) -> Result<GTruncated> {
    if n.ring != BaseRing::OF {
        return Err(Error::unsupported("g of a localized module"));
    }
    if window.0 > window.1 {
        return Err(Error::invalid("empty degree window"));
    }
    let mut out = GTruncated {
        truncation,
        window,
        nub_dims: BTreeMap::new(),
        vertex_dims: BTreeMap::new(),
        locals: BTreeMap::new(),
    };
    for k in 1..=truncation {
        let p = n.comp(Index::At(k));
        for d in window.0..=window.1 {
            let l = local(p, d, window)?;
            *out.nub_dims.entry(d).or_default() += l.pull.dim();
            *out.vertex_dims.entry(d).or_default() += l.q_e.rows();
            out.locals.insert((k, d), l);
        }
    }
    Ok(out)
}

impl GTruncated {
    /// Nub and vertex maps `g(A) -> g(B)` in degree `d` at component `k` induced by a
    /// degree-zero module map `theta` (target generators × source generators).
    fn induced(&self, target: &GTruncated, theta: &Matrix, k: u64, d: i64) -> Result<(Matrix, Matrix)> {
        let (s, t) = (&self.locals[&(k, d)], &target.locals[&(k, d)]);
        let on_e = t.q_e.mul(theta).mul(&s.lift_e);
        let on_n = t.q_n.mul(theta).mul(&s.lift_n);
        let mut on_block = Matrix::zeros(0, 0);
        for &e in &s.block {
            let (se, te) = (&self.locals[&(k, e)], &target.locals[&(k, e)]);
            on_block = on_block.block_diag(&te.q_e.mul(theta).mul(&se.lift_e));
        }
        let x = on_n.mul(&s.pull.to_a);
        let y = on_block.mul(&s.pull.to_b);
        let on_p = t
            .pull
            .induced(&x, &y)
            .ok_or_else(|| Error::defect(format!("induced map on g misses the pullback at ({k}, {d})")))?;
        Ok((on_p, on_e))
    }
}

/// Whether `0 -> g(A) -> g(B) -> g(C) -> 0` is exact over the truncation, for a short exact
/// sequence of modules with degree-zero maps `f : A -> B` and `h : B -> C`.
/// Returns the (degree, nub or vertex) places where exactness fails.
pub fn g_exactness_failures(
    a: &FpModule,
    b: &FpModule,
    c: &FpModule,
    f: &Germ<Matrix>,
    h: &Germ<Matrix>,
    truncation: u64,
    window: (i64, i64),
) -> Result<Vec<(u64, i64, &'static str)>> {
    let ga = g_truncated(a, truncation, window)?;
    let gb = g_truncated(b, truncation, window)?;
    let gc = g_truncated(c, truncation, window)?;
    let mut bad = Vec::new();
    for k in 1..=truncation {
        for d in window.0..=window.1 {
            let (fp, fv) = ga.induced(&gb, f.get(Index::At(k)), k, d)?;
            let (hp, hv) = gb.induced(&gc, h.get(Index::At(k)), k, d)?;
            let dims_p = (ga.locals[&(k, d)].pull.dim(), gb.locals[&(k, d)].pull.dim(), gc.locals[&(k, d)].pull.dim());
            let dims_v = (ga.locals[&(k, d)].q_e.rows(), gb.locals[&(k, d)].q_e.rows(), gc.locals[&(k, d)].q_e.rows());
            if !short_exact(&fp, &hp, dims_p) {
                bad.push((k, d, "nub"));
            }
            if !short_exact(&fv, &hv, dims_v) {
                bad.push((k, d, "vertex"));
            }
        }
    }
    Ok(bad)
}

fn short_exact(f: &Matrix, h: &Matrix, (a, b, c): (usize, usize, usize)) -> bool {
    let composite_zero = f.rows() == 0 || h.rows() == 0 || h.mul(f).is_zero();
    composite_zero && f.rank() == a && h.rank() == c && b == a + c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::int;

    #[test]
    fn g_of_torsion_is_e() {
        let t = FpModule::new(BaseRing::OF, Germ::single(1, QcPresentation::cyclic_torsion(0, 2), QcPresentation::zero())).unwrap();
        let e = g(&t).unwrap();
        e.validate().unwrap();
        assert!(e.vertex.is_empty());
        assert!(g(&FpModule::of()).is_err());
        assert_eq!(e_kernel(&e).unwrap(), t);
    }

    #[test]
    fn truncated_g_of_unit() {
        // N = O_F: P_d at k is the pullback of Q[c]_d -> Q <- Q^{window parity}
        let gt = g_truncated(&FpModule::of(), 3, (-4, 4)).unwrap();
        assert_eq!(gt.vertex_dims[&0], 3);
        assert_eq!(gt.vertex_dims[&1], 0);
        // degree -2: N_{-2} = Q, block has 5 even degrees, pullback dim = 1 + 5 - 1
        assert_eq!(gt.nub_dims[&-2], 3 * 5);
        // degree 2: N_2 = 0, pullback is the kernel of the sum map
        assert_eq!(gt.nub_dims[&2], 3 * 4);
    }

    #[test]
    fn g_preserves_short_exact_sequences() {
        // 0 -> Σ^{-2} O_F --c--> O_F -> Q[c]/c -> 0 at every component
        let a = FpModule::free(BaseRing::OF, &[Germ::constant(-2)]);
        let b = FpModule::of();
        let c = FpModule::new(BaseRing::OF, Germ::constant(QcPresentation::cyclic_torsion(0, 1))).unwrap();
        let f = Germ::constant(Matrix::from_rows(vec![vec![int(1)]]));
        let h = Germ::constant(Matrix::from_rows(vec![vec![int(1)]]));
        let bad = g_exactness_failures(&a, &b, &c, &f, &h, 2, (-4, 4)).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn vertex_functor() {
        let f = f_vertex(&[0, 2]);
        f.validate().unwrap();
        assert_eq!(f.part(Index::Generic).nub.dim(-10, Ring::Poly), 2);
    }
}
