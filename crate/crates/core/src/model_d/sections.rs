//! Sections over neighbourhoods of infinity, and Hom and Ext between graded objects.
//!
//! Homs are computed from `δ(f_∞, (f_k)) = tails(f) σ_V - σ_{V'} f_∞`. Write `α(g) = g σ_V`
//! and `β(a) = σ_{V'} a`, both landing in `H = Hom(V_∞, V'_gen^W)`. A family `(f_∞, (f_k))`
//! is in the kernel when `α(f_k) = β(f_∞)` for large `k`, so
//!
//! ```text
//! Hom = ⊕_k Y_k/K  ⊕  ∏_k K  ⊕  β⁻¹(im α)       (K = ker α on the generic Y)
//! Ext = H / (im α + im β)
//! ```
//!
//! The Ext is taken among eventually constant objects, where a germ in `tails(V')` is its
//! generic value. Allowing every germ as an extension class gives the larger
//! `tails(H / im α) / (constant germs from im β)`, reported as [`HomExt::ext_all_germs`].

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactlin::cxmaps::{postcompose, precompose};
use crate::exactlin::{linear_pullback, GradedVec, Matrix, Pullback};
use crate::germ::{union_indices, Index};

use super::DObject;

/// A space of sections in germ form, graded:
/// `⊕_{listed k} E_k ⊕ ⊕_{other k >= start} S ⊕ ∏_{other k >= start} P ⊕ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    pub start: u64,
    pub exceptional: BTreeMap<u64, GradedVec>,
    /// Contribution of each unlisted index, finitely supported.
    pub generic_sum: GradedVec,
    /// Contribution of each unlisted index, arbitrary support.
    pub generic_product: GradedVec,
    pub infinity: GradedVec,
}

impl SectionSpace {
    pub fn is_finite(&self) -> bool {
        self.generic_sum.is_zero() && self.generic_product.is_zero()
    }

    /// The total dimension when there are no generic contributions.
    pub fn finite_dims(&self) -> Option<GradedVec> {
        if !self.is_finite() {
            return None;
        }
        Some(self.exceptional.values().fold(self.infinity.clone(), |acc, v| acc.direct_sum(v)))
    }

    /// What index `k` contributes.
    pub fn at(&self, k: u64) -> GradedVec {
        if k < self.start {
            return GradedVec::zero();
        }
        self.exceptional
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.generic_sum.direct_sum(&self.generic_product))
    }

    /// Dimensions of the same construction on indices `start..=k` plus one point standing in
    /// for all larger indices; that point carries the infinity part and the product part.
    pub fn truncated_dims(&self, k: u64) -> GradedVec {
        let mut out = self.infinity.direct_sum(&self.generic_product);
        for j in self.start..=k {
            out = out.direct_sum(&self.at(j));
        }
        out
    }
}

/// `tails(Q^tails)` modulo the constant germs of a subspace of dimension `constants`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailQuotient {
    pub tails: GradedVec,
    pub constants: GradedVec,
}

impl TailQuotient {
    pub fn is_zero(&self) -> bool {
        self.tails.is_zero()
    }

    /// The part coming from constant germs.
    pub fn eventually_constant(&self) -> GradedVec {
        GradedVec::new(self.tails.dims().iter().map(|(&d, &n)| (d, n - self.constants.dim(d))))
    }
}

#[derive(Clone, Debug)]
pub struct HomExt {
    pub hom: SectionSpace,
    pub ext: GradedVec,
    pub ext_all_germs: TailQuotient,
    /// Per degree, the compatible pairs `(f_∞, f_gen)`: `to_a` gives `f_∞`, `to_b` the
    /// generic equivariant map.
    pub stable: BTreeMap<i64, Pullback>,
}

/// `⋔_N V`: pairs `(x_∞, (x_k)_{k>=N})` with `x_k` eventually `σ(x_∞)`; with `fixed`, the
/// fixed points.
pub fn pitchfork(v: &DObject, n: u64, fixed: bool) -> SectionSpace {
    assert!(n >= 1, "indices start at 1");
    let part = |i: Index| {
        let s = v.stalk_spaces(i);
        if fixed {
            s.plus
        } else {
            s.total()
        }
    };
    SectionSpace {
        start: n,
        exceptional: v.stalks.indices().into_iter().filter(|&k| k >= n).map(|k| (k, part(Index::At(k)))).collect(),
        generic_sum: part(Index::Generic),
        generic_product: GradedVec::zero(),
        infinity: v.infty.spaces().clone(),
    }
}

/// `⋔₁^W`, right adjoint to the constant sheaf.
pub fn global_sections(v: &DObject) -> SectionSpace {
    pitchfork(v, 1, true)
}

pub(crate) fn require_graded(v: &DObject, what: &str) -> Result<()> {
    if v.has_zero_differential() {
        Ok(())
    } else {
        Err(Error::unsupported(format!(
            "{what} has a nonzero differential; apply homology_d first"
        )))
    }
}

/// `Hom(V_gen, V'_gen)^W` in degree `t`: the `(+,+)` block then the `(-,-)` block.
pub(crate) fn generic_y(v: &DObject, w: &DObject, t: i64) -> (usize, usize) {
    let (a, b) = (v.stalk_spaces(Index::Generic), w.stalk_spaces(Index::Generic));
    (a.plus.hom(&b.plus).dim(t), a.minus.hom(&b.minus).dim(t))
}

/// `α : Y_gen -> H` and `β : A -> H` in degree `t`.
pub(crate) fn alpha_beta(v: &DObject, w: &DObject, t: i64) -> (Matrix, Matrix) {
    let (_, mm) = generic_y(v, w, t);
    let wp = w.generic().plus.spaces();
    let pre = precompose(&v.sigma, wp, t);
    let alpha = pre.hstack(&Matrix::zeros(pre.rows(), mm));
    let beta = postcompose(&w.sigma, v.infty.spaces(), t);
    (alpha, beta)
}

fn all_degrees(spaces: &[GradedVec]) -> BTreeSet<i64> {
    spaces.iter().flat_map(|s| s.degrees().collect::<Vec<_>>()).collect()
}

pub fn hom_ext(v: &DObject, w: &DObject) -> Result<HomExt> {
    require_graded(v, "source")?;
    require_graded(w, "target")?;
    let idx = union_indices(&[&v.stalks.indices(), &w.stalks.indices()]);
    let y = |i: Index| v.stalk_spaces(i).hom(&w.stalk_spaces(i)).plus;
    let a_sp = v.infty.spaces().hom(w.infty.spaces());
    let h_sp = v.infty.spaces().hom(w.generic().plus.spaces());
    let y_gen = y(Index::Generic);
    let mut hom = SectionSpace {
        start: 1,
        exceptional: idx.iter().map(|&k| (k, y(Index::At(k)))).collect(),
        generic_sum: GradedVec::zero(),
        generic_product: GradedVec::zero(),
        infinity: GradedVec::zero(),
    };
    let mut all = TailQuotient {
        tails: GradedVec::zero(),
        constants: GradedVec::zero(),
    };
    let mut stable = BTreeMap::new();
    for t in all_degrees(&[a_sp.clone(), h_sp.clone(), y_gen.clone()]) {
        let (alpha, beta) = alpha_beta(v, w, t);
        let ra = alpha.rank();
        let rab = alpha.hstack(&beta).rank();
        let k = y_gen.dim(t) - ra;
        hom.generic_sum.add_dim(t, ra);
        hom.generic_product.add_dim(t, k);
        hom.infinity.add_dim(t, a_sp.dim(t) + ra - rab);
        all.tails.add_dim(t, h_sp.dim(t) - ra);
        all.constants.add_dim(t, rab - ra);
        stable.insert(t, linear_pullback(&beta, &alpha)?);
    }
    Ok(HomExt {
        hom,
        ext: all.eventually_constant(),
        ext_all_germs: all,
        stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{ChainCx, WChainCx, WVec};
    use crate::model_d::{c, i_inf, i_k, sum_of_stalks, unit_d};

    fn q0() -> ChainCx {
        ChainCx::graded(GradedVec::concentrated(0, 1))
    }

    fn qw(i: u32) -> WChainCx {
        WChainCx::graded(&WVec::regular_power(i, 0))
    }

    #[test]
    fn pitchfork_examples() {
        let v = i_k(2, qw(1)).direct_sum(&i_inf(q0()));
        let s = pitchfork(&v, 1, false);
        assert!(s.is_finite());
        assert_eq!(s.finite_dims().unwrap().dim(0), 3);
        assert_eq!(pitchfork(&v, 3, false).finite_dims().unwrap().dim(0), 1);
        let g = global_sections(&unit_d());
        assert_eq!(g.generic_sum.dim(0), 1);
        assert_eq!(g.infinity.dim(0), 1);
        assert_eq!(pitchfork(&i_inf(q0()), 4, true).finite_dims().unwrap(), GradedVec::concentrated(0, 1));
    }

    #[test]
    fn unit_endomorphisms_are_eventually_constant_sequences() {
        let he = hom_ext(&unit_d(), &unit_d()).unwrap();
        assert_eq!(he.hom.generic_sum, GradedVec::concentrated(0, 1));
        assert!(he.hom.generic_product.is_zero());
        assert_eq!(he.hom.infinity, GradedVec::concentrated(0, 1));
        assert!(he.ext.is_zero());
        assert!(he.ext_all_germs.is_zero());
    }

    #[test]
    fn different_indices_do_not_talk() {
        for (x, y) in [(qw(0), qw(1)), (qw(2), qw(2))] {
            let he = hom_ext(&i_k(1, x.clone()), &i_k(3, y.clone())).unwrap();
            assert_eq!(he.hom.finite_dims().unwrap(), GradedVec::zero());
            assert!(he.ext.is_zero());
        }
    }

    #[test]
    fn point_at_infinity_into_tails() {
        let tail = sum_of_stalks(WChainCx::new(q0(), ChainCx::zero()));
        let he = hom_ext(&i_inf(q0()), &tail).unwrap();
        assert_eq!(he.hom.finite_dims().unwrap(), GradedVec::zero());
        assert_eq!(he.ext, GradedVec::concentrated(0, 1));
        assert!(he.ext_all_germs.constants.is_zero());
        // a split surjection onto tails kills the eventually constant classes only
        let he = hom_ext(&i_inf(q0()), &unit_d()).unwrap();
        assert!(he.ext.is_zero());
        assert_eq!(he.ext_all_germs.constants, GradedVec::concentrated(0, 1));
        // maps out of the sum of all i_k Q form a product
        let he = hom_ext(&tail, &c(q0())).unwrap();
        assert_eq!(he.hom.generic_product, GradedVec::concentrated(0, 1));
    }

    #[test]
    fn nonzero_differential_is_rejected() {
        let mut d = BTreeMap::new();
        d.insert(1, Matrix::from_i64(&[&[1]]));
        let disk = ChainCx::from_diffs(GradedVec::new([(0, 1), (1, 1)]), d).unwrap();
        assert!(hom_ext(&c(disk), &unit_d()).is_err());
    }
}
