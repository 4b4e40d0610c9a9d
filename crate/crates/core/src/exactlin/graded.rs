//! Finite graded vector spaces over Q and degree-shifting linear maps between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;

/// A finite-dimensional graded rational vector space, recorded by its dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVec {
    dims: BTreeMap<i64, usize>,
}

impl GradedVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut g = Self::zero();
        for (d, n) in dims {
            g.add_dim(d, n);
        }
        g
    }

    /// `Q^n` concentrated in degree `d`.
    pub fn concentrated(d: i64, n: usize) -> Self {
        Self::new([(d, n)])
    }

    /// One basis vector per listed degree.
    pub fn from_basis_degrees(degs: &[i64]) -> Self {
        Self::new(degs.iter().map(|&d| (d, 1)))
    }

    pub fn add_dim(&mut self, d: i64, n: usize) {
        if n == 0 {
            return;
        }
        *self.dims.entry(d).or_insert(0) += n;
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Nonzero degrees in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// The degree of each basis vector, basis ordered by degree.
    pub fn basis_degrees(&self) -> Vec<i64> {
        self.dims
            .iter()
            .flat_map(|(&d, &n)| std::iter::repeat(d).take(n))
            .collect()
    }

    /// Position of the first basis vector of degree `d` in the flattened basis.
    pub fn offset(&self, d: i64) -> usize {
        self.dims.range(..d).map(|(_, &n)| n).sum()
    }

    pub fn direct_sum(&self, other: &GradedVec) -> GradedVec {
        let mut out = self.clone();
        for (&d, &n) in &other.dims {
            out.add_dim(d, n);
        }
        out
    }

    pub fn tensor(&self, other: &GradedVec) -> GradedVec {
        let mut out = GradedVec::zero();
        for (&a, &n) in &self.dims {
            for (&b, &m) in &other.dims {
                out.add_dim(a + b, n * m);
            }
        }
        out
    }

    /// `Hom(self, other)` with `Hom_t = prod_n Hom(self_n, other_{n+t})`.
    pub fn hom(&self, other: &GradedVec) -> GradedVec {
        let mut out = GradedVec::zero();
        for (&a, &n) in &self.dims {
            for (&b, &m) in &other.dims {
                out.add_dim(b - a, n * m);
            }
        }
        out
    }

    pub fn shift(&self, s: i64) -> GradedVec {
        GradedVec::new(self.dims.iter().map(|(&d, &n)| (d + s, n)))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }
}

/// A linear map `source -> target` raising degree by `shift`, stored as one block per source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: GradedVec,
    pub target: GradedVec,
    pub shift: i64,
    blocks: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn zero(source: GradedVec, target: GradedVec, shift: i64) -> Self {
        GradedMap {
            source,
            target,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(v: &GradedVec) -> Self {
        let mut m = Self::zero(v.clone(), v.clone(), 0);
        for (&d, &n) in v.dims() {
            m.set_block(d, Matrix::identity(n));
        }
        m
    }

    /// The block from degree `d` to degree `d + shift`, zero if unset.
    pub fn block(&self, d: i64) -> Matrix {
        match self.blocks.get(&d) {
            Some(b) => b.clone(),
            None => Matrix::zeros(self.target.dim(d + self.shift), self.source.dim(d)),
        }
    }

    pub fn set_block(&mut self, d: i64, m: Matrix) {
        assert_eq!(m.rows(), self.target.dim(d + self.shift), "block rows at degree {d}");
        assert_eq!(m.cols(), self.source.dim(d), "block cols at degree {d}");
        if m.is_zero() {
            self.blocks.remove(&d);
        } else {
            self.blocks.insert(d, m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        assert_eq!(first.target, self.source, "composition of incompatible maps");
        let mut out = GradedMap::zero(first.source.clone(), self.target.clone(), first.shift + self.shift);
        for d in first.source.degrees() {
            out.set_block(d, self.block(d + first.shift).mul(&first.block(d)));
        }
        out
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.shift, other.shift);
        let mut out = self.clone();
        for d in self.source.degrees() {
            out.set_block(d, self.block(d).add(&other.block(d)));
        }
        out
    }

    pub fn scale(&self, s: &super::rat::Rat) -> GradedMap {
        let mut out = self.clone();
        for d in self.source.degrees() {
            out.set_block(d, self.block(d).scale(s));
        }
        out
    }

    /// Dimension of the image in each target degree.
    pub fn rank(&self, d: i64) -> usize {
        self.block(d).rank()
    }

    /// The whole map as one matrix on the degree-ordered bases.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.target.total_dim(), self.source.total_dim());
        for d in self.source.degrees() {
            let b = self.block(d);
            m.paste(self.target.offset(d + self.shift), self.source.offset(d), &b);
        }
        m
    }

    pub fn from_matrix(source: GradedVec, target: GradedVec, shift: i64, m: &Matrix) -> GradedMap {
        let mut out = GradedMap::zero(source.clone(), target.clone(), shift);
        for d in source.degrees() {
            let rows: Vec<usize> = (0..target.dim(d + shift)).map(|i| target.offset(d + shift) + i).collect();
            let cols: Vec<usize> = (0..source.dim(d)).map(|j| source.offset(d) + j).collect();
            out.set_block(d, m.select(&rows, &cols));
        }
        out
    }

    pub fn blocks(&self) -> &BTreeMap<i64, Matrix> {
        &self.blocks
    }

    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.shift, other.shift);
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let mut out = GradedMap::zero(source.clone(), target, self.shift);
        for d in source.degrees() {
            out.set_block(d, self.block(d).block_diag(&other.block(d)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_follow_degree_order() {
        let v = GradedVec::new([(2, 1), (-1, 2), (0, 3)]);
        assert_eq!(v.basis_degrees(), vec![-1, -1, 0, 0, 0, 2]);
        assert_eq!(v.offset(0), 2);
        assert_eq!(v.offset(2), 5);
        assert_eq!(v.total_dim(), 6);
    }

    #[test]
    fn tensor_and_hom_dims() {
        let v = GradedVec::new([(0, 1), (2, 1)]);
        let t = v.tensor(&v);
        assert_eq!(t.dim(2), 2);
        let h = v.hom(&v);
        assert_eq!(h.dim(0), 2);
        assert_eq!(h.dim(-2), 1);
    }

    #[test]
    fn matrix_roundtrip() {
        let v = GradedVec::new([(0, 2), (1, 1)]);
        let id = GradedMap::identity(&v);
        assert_eq!(id.to_matrix(), Matrix::identity(3));
        let back = GradedMap::from_matrix(v.clone(), v.clone(), 0, &id.to_matrix());
        assert_eq!(back, id);
    }
}
