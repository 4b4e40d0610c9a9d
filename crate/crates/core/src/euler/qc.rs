//! Finitely presented graded modules over `Q[c]` (or `Q[c, c^-1]`), `|c| = -2`.
//!
//! A presentation lists generator degrees, relation degrees, and a scalar matrix
//! (generators × relations); entry `(i, j)` multiplies `c^{(g_i - r_j)/2}`. In degree `d`
//! the module is `F_d / R_d` with `F_d` spanned by `c^{(g_i - d)/2} g_i` and `R_d` by the
//! relations of degree at least `d`, so every degree is plain linear algebra.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::matrix::subspace;
use crate::exactlin::{HMat, Matrix, Rat, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QcPresentation {
    pub gens: Vec<i64>,
    pub rels: Vec<i64>,
    pub matrix: Matrix,
}

/// A cyclic decomposition obtained from the Smith form of the relation matrix.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Columns are the new generators written in the old ones; new generator `t` has degree `gens[t]`.
    pub basis: HMat,
    /// Old coordinates to new coordinates.
    pub to_new: HMat,
    /// New generators that are free.
    pub free: Vec<usize>,
    /// New generators `t` with relation `c^m t = 0`, as `(t, m)`, `m >= 1`.
    pub torsion: Vec<(usize, i64)>,
}

impl QcPresentation {
    pub fn new(gens: Vec<i64>, rels: Vec<i64>, matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), gens.len());
        assert_eq!(matrix.cols(), rels.len());
        QcPresentation { gens, rels, matrix }
    }

    pub fn zero() -> Self {
        Self::free(Vec::new())
    }

    pub fn free(gens: Vec<i64>) -> Self {
        let n = gens.len();
        QcPresentation::new(gens, Vec::new(), Matrix::zeros(n, 0))
    }

    /// `Σ^d Q[c] / c^m`.
    pub fn cyclic_torsion(d: i64, m: i64) -> Self {
        assert!(m >= 0);
        QcPresentation::new(vec![d], vec![d - 2 * m], Matrix::from_i64(&[&[1]]))
    }

    pub fn from_hmat(rel: &HMat) -> Self {
        QcPresentation::new(rel.rowdeg.clone(), rel.coldeg.clone(), rel.m.clone())
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn rel_hmat(&self) -> HMat {
        HMat::new(self.gens.clone(), self.rels.clone(), self.matrix.clone())
    }

    pub fn check(&self, ring: Ring) -> Result<()> {
        self.rel_hmat().check(ring).map_err(|e| e.context("relation matrix"))
    }

    /// Lowest and highest degree among generators and relations.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let all = self.gens.iter().chain(&self.rels);
        Some((*all.clone().min()?, *all.max()?))
    }

    /// Generators contributing to degree `d`.
    pub fn f_idx(&self, d: i64, ring: Ring) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| ring.allows(self.gens[i] - d)).collect()
    }

    /// Relations contributing to degree `d`.
    pub fn r_idx(&self, d: i64, ring: Ring) -> Vec<usize> {
        (0..self.rels.len()).filter(|&j| ring.allows(self.rels[j] - d)).collect()
    }

    /// `R_d` as a matrix on the full generator list (rows outside `F_d` are zero).
    pub fn rel_block(&self, d: i64, ring: Ring) -> Matrix {
        self.matrix.select_cols(&self.r_idx(d, ring))
    }

    pub fn dim(&self, d: i64, ring: Ring) -> usize {
        self.f_idx(d, ring).len() - self.rel_block(d, ring).rank()
    }

    /// Whether the element with generator coordinates `v` (degree `d`) is zero in the module.
    pub fn is_zero_element(&self, d: i64, ring: Ring, v: &[Rat]) -> bool {
        subspace::contains(&self.rel_block(d, ring), v)
    }

    /// A linear map from generator coordinates in degree `d` onto a basis of the degree `d` part.
    pub fn quotient_map(&self, d: i64, ring: Ring) -> Matrix {
        let f = self.f_idx(d, ring);
        let r = self.rel_block(d, ring).select_rows(&f);
        let q = subspace::quotient_map(f.len(), &r);
        // extend by zero columns to the full generator list
        let mut out = Matrix::zeros(q.rows(), self.gens.len());
        for (jj, &j) in f.iter().enumerate() {
            for i in 0..q.rows() {
                out.set(i, j, q.get(i, jj).clone());
            }
        }
        out
    }

    /// Lifts of a basis of the degree `d` part, as columns over the full generator list.
    pub fn basis_lifts(&self, d: i64, ring: Ring) -> Matrix {
        let q = self.quotient_map(d, ring);
        let f = self.f_idx(d, ring);
        let qf = q.select_cols(&f);
        // right inverse of qf: solve qf X = I
        let x = qf.solve_matrix(&Matrix::identity(qf.rows())).unwrap_or_else(|| Matrix::zeros(f.len(), 0));
        let mut out = Matrix::zeros(self.gens.len(), qf.rows());
        for (ii, &i) in f.iter().enumerate() {
            for j in 0..x.cols() {
                out.set(i, j, x.get(ii, j).clone());
            }
        }
        out
    }

    /// Zeroes out entries that are not in `F_d`; such entries cannot occur in a degree `d` element.
    pub fn restrict_to_degree(&self, d: i64, ring: Ring, v: &[Rat]) -> Result<Vec<Rat>> {
        for i in 0..self.gens.len() {
            if !v[i].is_zero() && !ring.allows(self.gens[i] - d) {
                return Err(Error::invalid(format!(
                    "coefficient on generator {i} (degree {}) cannot occur in degree {d}",
                    self.gens[i]
                )));
            }
        }
        Ok(v.to_vec())
    }

    pub fn direct_sum(&self, other: &QcPresentation) -> QcPresentation {
        QcPresentation::from_hmat(&self.rel_hmat().block_diag(&other.rel_hmat()))
    }

    pub fn shift(&self, s: i64) -> QcPresentation {
        QcPresentation::new(
            self.gens.iter().map(|g| g + s).collect(),
            self.rels.iter().map(|r| r + s).collect(),
            self.matrix.clone(),
        )
    }

    /// Tensor product. Generators `g_i ⊗ p_a` are ordered `i`-major.
    pub fn tensor(&self, other: &QcPresentation) -> QcPresentation {
        let left = self.rel_hmat().kron(&HMat::identity(other.gens.clone()));
        let right = HMat::identity(self.gens.clone()).kron(&other.rel_hmat());
        QcPresentation::from_hmat(&left.hstack(&right))
    }

    /// The same module with `c` acting by `-c`.
    pub fn twist(&self) -> QcPresentation {
        QcPresentation::from_hmat(&self.rel_hmat().twist())
    }

    pub fn decompose(&self, ring: Ring) -> Result<Decomposition> {
        let s = self.rel_hmat().smith(ring)?;
        let exps = s.invariant_exponents();
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for t in 0..self.gens.len() {
            match s.pivots.iter().position(|p| p.0 == t) {
                None => free.push(t),
                Some(k) if exps[k] > 0 => torsion.push((t, exps[k])),
                Some(_) => {}
            }
        }
        Ok(Decomposition {
            basis: s.u_inv,
            to_new: s.u,
            free,
            torsion,
        })
    }

    /// Replaces the presentation by its cyclic normal form: free generators, then torsion.
    pub fn simplify(&self, ring: Ring) -> Result<(QcPresentation, HMat)> {
        let dec = self.decompose(ring)?;
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut cols = Vec::new();
        for &t in &dec.free {
            gens.push(self.gens[t]);
            cols.push(t);
        }
        let nfree = gens.len();
        for &(t, m) in &dec.torsion {
            gens.push(self.gens[t]);
            rels.push(self.gens[t] - 2 * m);
            cols.push(t);
        }
        let mut matrix = Matrix::zeros(gens.len(), rels.len());
        for k in 0..rels.len() {
            matrix.set(nfree + k, k, Rat::from_integer(1.into()));
        }
        // inclusion of the new generators into the old presentation
        let incl = dec.basis.select_cols(&cols);
        Ok((QcPresentation::new(gens, rels, matrix), incl))
    }

    pub fn is_free(&self, ring: Ring) -> Result<bool> {
        Ok(self.decompose(ring)?.torsion.is_empty())
    }

    /// Degrees of the free summands in a cyclic decomposition.
    pub fn free_degrees(&self, ring: Ring) -> Result<Vec<i64>> {
        let dec = self.decompose(ring)?;
        Ok(dec.free.iter().map(|&t| self.gens[t]).collect())
    }

    /// `(degree, order)` of the torsion summands.
    pub fn torsion_summands(&self, ring: Ring) -> Result<Vec<(i64, i64)>> {
        let dec = self.decompose(ring)?;
        Ok(dec.torsion.iter().map(|&(t, m)| (self.gens[t], m)).collect())
    }

    /// Kernel of `theta : self -> target` (degree `t`), with its inclusion into `self`.
    pub fn kernel_of(&self, target: &QcPresentation, theta: &HMat, t: i64, ring: Ring) -> Result<(QcPresentation, HMat)> {
        let neg = HMat::new(target.gens.clone(), target.rels.clone(), target.matrix.scale(&-Rat::from_integer(1.into())));
        let big = theta.hstack(&neg);
        let k = big.kernel(ring)?;
        let top: Vec<usize> = (0..self.gens.len()).collect();
        let xs = k.select_rows(&top);
        let g = HMat::new(self.gens.clone(), xs.coldeg.iter().map(|d| d - t).collect(), xs.m);
        self.submodule(&g, ring)
    }

    /// The submodule generated by the columns of `g` (generator coordinates), presented on those columns.
    pub fn submodule(&self, g: &HMat, ring: Ring) -> Result<(QcPresentation, HMat)> {
        let neg = HMat::new(self.gens.clone(), self.rels.clone(), self.matrix.scale(&-Rat::from_integer(1.into())));
        let syz = g.hstack(&neg).kernel(ring)?;
        let top: Vec<usize> = (0..g.cols()).collect();
        let rel = syz.select_rows(&top);
        let pres = QcPresentation::new(g.coldeg.clone(), rel.coldeg.clone(), rel.m);
        Ok((pres, g.clone()))
    }

    /// Cokernel of `theta : source -> self` of degree `t`.
    pub fn cokernel_of(&self, theta: &HMat) -> QcPresentation {
        QcPresentation::from_hmat(&self.rel_hmat().hstack(theta))
    }

    /// `c^m`-torsion-free rank in each parity over the Laurent ring: `(even, odd)`.
    pub fn laurent_ranks(&self) -> (usize, usize) {
        (self.dim(0, Ring::Laurent), self.dim(1, Ring::Laurent))
    }
}

/// A homogeneous map between presentations of degree `t`: rows are target generators,
/// columns source generators (column degree `g_i + t`).
pub fn map_hmat(target: &QcPresentation, source: &QcPresentation, t: i64, m: Matrix) -> HMat {
    HMat::new(target.gens.clone(), source.gens.iter().map(|g| g + t).collect(), m)
}

/// Checks that `theta` (degree `t`) sends every relation of `source` into the relations of `target`.
pub fn is_well_defined(source: &QcPresentation, target: &QcPresentation, theta: &HMat, t: i64) -> bool {
    let img = theta.m.mul(&source.matrix);
    (0..source.rels.len()).all(|j| target.is_zero_element(source.rels[j] + t, Ring::Poly, &img.col(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_parts_of_torsion() {
        // Q[c]/c^2 on a generator of degree 0: Q in degrees 0 and -2
        let t = QcPresentation::cyclic_torsion(0, 2);
        t.check(Ring::Poly).unwrap();
        assert_eq!(t.dim(0, Ring::Poly), 1);
        assert_eq!(t.dim(-2, Ring::Poly), 1);
        assert_eq!(t.dim(-4, Ring::Poly), 0);
        assert_eq!(t.dim(2, Ring::Poly), 0);
        assert_eq!(t.dim(0, Ring::Laurent), 0);
    }

    #[test]
    fn decomposition_finds_torsion() {
        // generators a (deg 0), b (deg -2); relation c a - b, relation c^2 b
        let p = QcPresentation::new(vec![0, -2], vec![-2, -6], Matrix::from_i64(&[&[1, 0], &[-1, 1]]));
        p.check(Ring::Poly).unwrap();
        let tors = p.torsion_summands(Ring::Poly).unwrap();
        assert_eq!(tors, vec![(0, 3)]);
        assert!(p.free_degrees(Ring::Poly).unwrap().is_empty());
        let (s, _) = p.simplify(Ring::Poly).unwrap();
        for d in -8..=2 {
            assert_eq!(s.dim(d, Ring::Poly), p.dim(d, Ring::Poly), "degree {d}");
        }
    }

    #[test]
    fn kernel_of_multiplication_by_c() {
        // c : Q[c] -> Q[c]/c^2, degree -2
        let src = QcPresentation::free(vec![0]);
        let tgt = QcPresentation::cyclic_torsion(0, 2);
        let theta = map_hmat(&tgt, &src, -2, Matrix::from_i64(&[&[1]]));
        theta.check(Ring::Poly).unwrap();
        assert!(is_well_defined(&src, &tgt, &theta, -2));
        let (k, _) = src.kernel_of(&tgt, &theta, -2, Ring::Poly).unwrap();
        // kernel is c Q[c], generated in degree -2
        for d in -6..=2 {
            let want = if d <= -2 && d % 2 == 0 { 1 } else { 0 };
            assert_eq!(k.dim(d, Ring::Poly), want, "degree {d}");
        }
    }

    #[test]
    fn tensor_of_torsion() {
        let a = QcPresentation::cyclic_torsion(0, 2);
        let b = QcPresentation::cyclic_torsion(0, 3);
        let t = a.tensor(&b);
        // Q[c]/c^2
        assert_eq!(t.torsion_summands(Ring::Poly).unwrap(), vec![(0, 2)]);
    }
}
