//! Graded representations of the group of order two, kept split into eigenspaces.

use super::chain::ChainCx;
use super::graded::{GradedMap, GradedVec};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// `plus ⊕ minus`, with `w` acting by `+1` and `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WVec {
    pub plus: GradedVec,
    pub minus: GradedVec,
}

impl WVec {
    pub fn new(plus: GradedVec, minus: GradedVec) -> Self {
        WVec { plus, minus }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// A representation on which `w` acts trivially.
    pub fn trivial(v: GradedVec) -> Self {
        WVec::new(v, GradedVec::zero())
    }

    /// The regular representation `QW^{⊗i}` placed in degree `d`; for `i = 0` the trivial line.
    pub fn regular_power(i: u32, d: i64) -> Self {
        if i == 0 {
            return Self::trivial(GradedVec::concentrated(d, 1));
        }
        let half = 1usize << (i - 1);
        WVec::new(GradedVec::concentrated(d, half), GradedVec::concentrated(d, half))
    }

    /// Splits an explicit involution on `Q^n` (concentrated in degree `d`) into eigenspaces.
    pub fn from_involution(w: &Matrix, d: i64) -> Result<Self> {
        let n = w.rows();
        if w.cols() != n || w.mul(w) != Matrix::identity(n) {
            return Err(Error::invalid("matrix is not an involution"));
        }
        let id = Matrix::identity(n);
        let plus = w.sub(&id).kernel().cols();
        let minus = w.add(&id).kernel().cols();
        Ok(WVec::new(GradedVec::concentrated(d, plus), GradedVec::concentrated(d, minus)))
    }

    pub fn total(&self) -> GradedVec {
        self.plus.direct_sum(&self.minus)
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn direct_sum(&self, other: &WVec) -> WVec {
        WVec::new(self.plus.direct_sum(&other.plus), self.minus.direct_sum(&other.minus))
    }

    /// Diagonal action on the tensor product.
    pub fn tensor(&self, other: &WVec) -> WVec {
        let plus = self.plus.tensor(&other.plus).direct_sum(&self.minus.tensor(&other.minus));
        let minus = self.plus.tensor(&other.minus).direct_sum(&self.minus.tensor(&other.plus));
        WVec::new(plus, minus)
    }

    /// `Hom_Q(self, other)` with the conjugation action.
    pub fn hom(&self, other: &WVec) -> WVec {
        let plus = self.plus.hom(&other.plus).direct_sum(&self.minus.hom(&other.minus));
        let minus = self.plus.hom(&other.minus).direct_sum(&self.minus.hom(&other.plus));
        WVec::new(plus, minus)
    }

    pub fn shift(&self, s: i64) -> WVec {
        WVec::new(self.plus.shift(s), self.minus.shift(s))
    }
}

/// The fixed points of `w`.
pub fn w_fixed(v: &WVec) -> GradedVec {
    v.plus.clone()
}

/// A `W`-equivariant map, which is a pair of maps on eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMap {
    pub plus: GradedMap,
    pub minus: GradedMap,
}

impl WMap {
    pub fn zero(source: &WVec, target: &WVec, shift: i64) -> Self {
        WMap {
            plus: GradedMap::zero(source.plus.clone(), target.plus.clone(), shift),
            minus: GradedMap::zero(source.minus.clone(), target.minus.clone(), shift),
        }
    }

    pub fn identity(v: &WVec) -> Self {
        WMap {
            plus: GradedMap::identity(&v.plus),
            minus: GradedMap::identity(&v.minus),
        }
    }

    pub fn compose(&self, first: &WMap) -> WMap {
        WMap {
            plus: self.plus.compose(&first.plus),
            minus: self.minus.compose(&first.minus),
        }
    }

    pub fn add(&self, other: &WMap) -> WMap {
        WMap {
            plus: self.plus.add(&other.plus),
            minus: self.minus.add(&other.minus),
        }
    }

    pub fn direct_sum(&self, other: &WMap) -> WMap {
        WMap {
            plus: self.plus.direct_sum(&other.plus),
            minus: self.minus.direct_sum(&other.minus),
        }
    }
}

/// The restriction of an equivariant map to fixed points.
pub fn w_fixed_map(f: &WMap) -> GradedMap {
    f.plus.clone()
}

/// A chain complex of `Q[W]`-modules; the differential commutes with `w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WChainCx {
    pub plus: ChainCx,
    pub minus: ChainCx,
}

impl WChainCx {
    pub fn new(plus: ChainCx, minus: ChainCx) -> Self {
        WChainCx { plus, minus }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn graded(v: &WVec) -> Self {
        WChainCx::new(ChainCx::graded(v.plus.clone()), ChainCx::graded(v.minus.clone()))
    }

    pub fn spaces(&self) -> WVec {
        WVec::new(self.plus.spaces().clone(), self.minus.spaces().clone())
    }

    pub fn is_zero(&self) -> bool {
        self.spaces().is_zero()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.plus.has_zero_differential() && self.minus.has_zero_differential()
    }

    pub fn homology(&self) -> WVec {
        WVec::new(self.plus.homology(), self.minus.homology())
    }

    pub fn homology_cx(&self) -> WChainCx {
        WChainCx::graded(&self.homology())
    }

    pub fn direct_sum(&self, other: &WChainCx) -> WChainCx {
        WChainCx::new(self.plus.direct_sum(&other.plus), self.minus.direct_sum(&other.minus))
    }

    pub fn shift(&self, s: i64) -> WChainCx {
        WChainCx::new(self.plus.shift(s), self.minus.shift(s))
    }

    /// Tensor with diagonal action; the plus part is `(+⊗+) ⊕ (-⊗-)`.
    pub fn tensor(&self, other: &WChainCx) -> WChainCx {
        let plus = self.plus.tensor(&other.plus).direct_sum(&self.minus.tensor(&other.minus));
        let minus = self.plus.tensor(&other.minus).direct_sum(&self.minus.tensor(&other.plus));
        WChainCx::new(plus, minus)
    }

    /// Mapping complex with conjugation action.
    pub fn hom(&self, other: &WChainCx) -> WChainCx {
        let plus = ChainCx::hom_complex(&self.plus, &other.plus)
            .direct_sum(&ChainCx::hom_complex(&self.minus, &other.minus));
        let minus = ChainCx::hom_complex(&self.plus, &other.minus)
            .direct_sum(&ChainCx::hom_complex(&self.minus, &other.plus));
        WChainCx::new(plus, minus)
    }
}

/// The explicit involution of `QW^{⊗i}` on `Q^{2^i}`: `w` acts by the swap on each factor.
pub fn regular_power_involution(i: u32) -> Matrix {
    let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
    let mut m = Matrix::identity(1);
    for _ in 0..i {
        m = m.kron(&swap);
    }
    m
}

/// `dim Hom_W(a, b)` in degree `t`, straight from the eigenspace decomposition.
pub fn hom_w_dim(a: &WVec, b: &WVec, t: i64) -> usize {
    a.hom(b).plus.dim(t)
}
