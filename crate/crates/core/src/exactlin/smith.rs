//! Homogeneous matrices over `Q`, `Q[c]` and `Q[c, c^-1]` with `|c| = -2`, and their Smith forms.
//!
//! A homogeneous matrix is stored as a scalar matrix together with a degree for every
//! row and column. Entry `(i, j)` stands for `a_ij · c^{(row_i - col_j)/2}`, so the
//! exponent is forced by the degrees and products of homogeneous matrices are plain
//! scalar products.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::rat::Rat;
use crate::error::{Error, Result};

/// The graded coefficient ring; `c` always has degree `-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    /// `Q` concentrated in degree zero.
    Rational,
    /// `Q[c]`.
    Poly,
    /// `Q[c, c^-1]`.
    Laurent,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Rational => "Q",
            Ring::Poly => "Q[c]",
            Ring::Laurent => "Q[c,c^-1]",
        })
    }
}

impl Ring {
    /// Whether a coefficient `c^{diff/2}` exists in this ring.
    pub fn allows(self, diff: i64) -> bool {
        match self {
            Ring::Rational => diff == 0,
            Ring::Poly => diff >= 0 && diff % 2 == 0,
            Ring::Laurent => diff % 2 == 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HMat {
    pub rowdeg: Vec<i64>,
    pub coldeg: Vec<i64>,
    pub m: Matrix,
}

impl fmt::Debug for HMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HMat(rows {:?}, cols {:?}, {:?})", self.rowdeg, self.coldeg, self.m)
    }
}

impl HMat {
    pub fn new(rowdeg: Vec<i64>, coldeg: Vec<i64>, m: Matrix) -> Self {
        assert_eq!(m.rows(), rowdeg.len());
        assert_eq!(m.cols(), coldeg.len());
        HMat { rowdeg, coldeg, m }
    }

    pub fn zeros(rowdeg: Vec<i64>, coldeg: Vec<i64>) -> Self {
        let m = Matrix::zeros(rowdeg.len(), coldeg.len());
        HMat { rowdeg, coldeg, m }
    }

    pub fn identity(deg: Vec<i64>) -> Self {
        let m = Matrix::identity(deg.len());
        HMat { rowdeg: deg.clone(), coldeg: deg, m }
    }

    pub fn rows(&self) -> usize {
        self.rowdeg.len()
    }

    pub fn cols(&self) -> usize {
        self.coldeg.len()
    }

    /// Forced exponent of `c` at `(i, j)`, when it is an integer.
    pub fn exponent(&self, i: usize, j: usize) -> Option<i64> {
        let diff = self.rowdeg[i] - self.coldeg[j];
        (diff % 2 == 0).then_some(diff / 2)
    }

    /// Checks every nonzero entry against the ring; reports the first offending entry.
    pub fn check(&self, ring: Ring) -> Result<()> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if !self.m.get(i, j).is_zero() && !ring.allows(self.rowdeg[i] - self.coldeg[j]) {
                    return Err(Error::invalid(format!(
                        "entry ({i}, {j}) is not homogeneous over {ring}: row degree {} and column degree {}",
                        self.rowdeg[i], self.coldeg[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &HMat) -> HMat {
        assert_eq!(self.coldeg, other.rowdeg, "degree mismatch in product");
        HMat::new(self.rowdeg.clone(), other.coldeg.clone(), self.m.mul(&other.m))
    }

    pub fn hstack(&self, other: &HMat) -> HMat {
        assert_eq!(self.rowdeg, other.rowdeg);
        let mut coldeg = self.coldeg.clone();
        coldeg.extend(&other.coldeg);
        HMat::new(self.rowdeg.clone(), coldeg, self.m.hstack(&other.m))
    }

    pub fn vstack(&self, other: &HMat) -> HMat {
        assert_eq!(self.coldeg, other.coldeg);
        let mut rowdeg = self.rowdeg.clone();
        rowdeg.extend(&other.rowdeg);
        HMat::new(rowdeg, self.coldeg.clone(), self.m.vstack(&other.m))
    }

    pub fn block_diag(&self, other: &HMat) -> HMat {
        let mut rowdeg = self.rowdeg.clone();
        rowdeg.extend(&other.rowdeg);
        let mut coldeg = self.coldeg.clone();
        coldeg.extend(&other.coldeg);
        HMat::new(rowdeg, coldeg, self.m.block_diag(&other.m))
    }

    pub fn select_cols(&self, cols: &[usize]) -> HMat {
        HMat::new(
            self.rowdeg.clone(),
            cols.iter().map(|&j| self.coldeg[j]).collect(),
            self.m.select_cols(cols),
        )
    }

    pub fn select_rows(&self, rows: &[usize]) -> HMat {
        HMat::new(
            rows.iter().map(|&i| self.rowdeg[i]).collect(),
            self.coldeg.clone(),
            self.m.select_rows(rows),
        )
    }

    /// Kronecker product; degrees add.
    pub fn kron(&self, other: &HMat) -> HMat {
        let rowdeg = self.rowdeg.iter().flat_map(|a| other.rowdeg.iter().map(move |b| a + b)).collect();
        let coldeg = self.coldeg.iter().flat_map(|a| other.coldeg.iter().map(move |b| a + b)).collect();
        HMat::new(rowdeg, coldeg, self.m.kron(&other.m))
    }

    /// Applies `c -> -c`: entry `(i, j)` picks up `(-1)^{e_ij}`.
    pub fn twist(&self) -> HMat {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if let Some(e) = self.exponent(i, j) {
                    if e.rem_euclid(2) == 1 {
                        let v = -self.m.get(i, j).clone();
                        out.m.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn smith(&self, ring: Ring) -> Result<Smith> {
        smith(self, ring)
    }

    /// Generators of the kernel of the map of free modules `Q[c]^cols -> Q[c]^rows`.
    pub fn kernel(&self, ring: Ring) -> Result<HMat> {
        let s = self.smith(ring)?;
        let pivot_cols: Vec<usize> = s.pivots.iter().map(|p| p.1).collect();
        let free: Vec<usize> = (0..self.cols()).filter(|j| !pivot_cols.contains(j)).collect();
        Ok(s.v.select_cols(&free))
    }
}

/// `u · M · v = d` with `d` zero except at the pivots, where it is `1` (standing for `c^e`).
#[derive(Clone, Debug)]
pub struct Smith {
    pub ring: Ring,
    pub u: HMat,
    pub u_inv: HMat,
    pub v: HMat,
    pub d: HMat,
    /// Pivot positions in the order they were eliminated.
    pub pivots: Vec<(usize, usize)>,
}

impl Smith {
    /// Exponents of the invariant factors `c^e`, in pivot order (nondecreasing over `Q[c]`).
    pub fn exponents(&self) -> Vec<i64> {
        self.pivots
            .iter()
            .map(|&(i, j)| (self.d.rowdeg[i] - self.d.coldeg[j]) / 2)
            .collect()
    }

    /// Invariant factors after accounting for units: over `Q[c,c^-1]` every factor is `1`.
    pub fn invariant_exponents(&self) -> Vec<i64> {
        match self.ring {
            Ring::Poly => self.exponents(),
            _ => vec![0; self.pivots.len()],
        }
    }
}

fn smith(a: &HMat, ring: Ring) -> Result<Smith> {
    a.check(ring)?;
    let (nr, nc) = (a.rows(), a.cols());
    let mut d = a.m.clone();
    let mut u = Matrix::identity(nr);
    let mut u_inv = Matrix::identity(nr);
    let mut v = Matrix::identity(nc);
    let mut row_done = vec![false; nr];
    let mut col_done = vec![false; nc];
    let mut pivots = Vec::new();
    loop {
        // pivot: a nonzero entry of least c-exponent among the active block
        let mut best: Option<(i64, usize, usize)> = None;
        for i in (0..nr).filter(|&i| !row_done[i]) {
            for j in (0..nc).filter(|&j| !col_done[j]) {
                if d.get(i, j).is_zero() {
                    continue;
                }
                let e = a.rowdeg[i] - a.coldeg[j];
                if best.map_or(true, |b| e < b.0) {
                    best = Some((e, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let p = d.get(pi, pj).clone();
        let inv = p.recip();
        // normalise the pivot row
        scale_row(&mut d, pi, &inv);
        scale_row(&mut u, pi, &inv);
        scale_col(&mut u_inv, pi, &p);
        for i in 0..nr {
            if i == pi {
                continue;
            }
            let f = d.get(i, pj).clone();
            if f.is_zero() {
                continue;
            }
            // row_i -= f row_pi
            add_row(&mut d, i, pi, &-f.clone());
            add_row(&mut u, i, pi, &-f.clone());
            // inverse: col_pi += f col_i
            add_col(&mut u_inv, pi, i, &f);
        }
        for j in 0..nc {
            if j == pj {
                continue;
            }
            let f = d.get(pi, j).clone();
            if f.is_zero() {
                continue;
            }
            add_col(&mut d, j, pj, &-f.clone());
            add_col(&mut v, j, pj, &-f);
        }
        row_done[pi] = true;
        col_done[pj] = true;
        pivots.push((pi, pj));
    }
    let rd = a.rowdeg.clone();
    let cd = a.coldeg.clone();
    Ok(Smith {
        ring,
        u: HMat::new(rd.clone(), rd.clone(), u),
        u_inv: HMat::new(rd.clone(), rd.clone(), u_inv),
        v: HMat::new(cd.clone(), cd.clone(), v),
        d: HMat::new(rd, cd, d),
        pivots,
    })
}

fn scale_row(m: &mut Matrix, r: usize, s: &Rat) {
    if s.is_one() {
        return;
    }
    for c in 0..m.cols() {
        let v = m.get(r, c) * s;
        m.set(r, c, v);
    }
}

fn scale_col(m: &mut Matrix, c: usize, s: &Rat) {
    if s.is_one() {
        return;
    }
    for r in 0..m.rows() {
        let v = m.get(r, c) * s;
        m.set(r, c, v);
    }
}

/// `row_dst += f row_src`.
fn add_row(m: &mut Matrix, dst: usize, src: usize, f: &Rat) {
    for c in 0..m.cols() {
        let s = m.get(src, c);
        if s.is_zero() {
            continue;
        }
        let v = m.get(dst, c) + f * s;
        m.set(dst, c, v);
    }
}

/// `col_dst += f col_src`.
fn add_col(m: &mut Matrix, dst: usize, src: usize, f: &Rat) {
    for r in 0..m.rows() {
        let s = m.get(r, src);
        if s.is_zero() {
            continue;
        }
        let v = m.get(r, dst) + f * s;
        m.set(r, dst, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &HMat, ring: Ring) -> Smith {
        let s = a.smith(ring).unwrap();
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), HMat::identity(a.rowdeg.clone()));
        s.u.check(ring).unwrap();
        s.u_inv.check(ring).unwrap();
        s.v.check(ring).unwrap();
        if ring == Ring::Poly {
            let ex = s.exponents();
            assert!(ex.windows(2).all(|w| w[0] <= w[1]), "not a divisibility chain: {ex:?}");
        }
        s
    }

    #[test]
    fn identity_has_unit_factors() {
        let a = HMat::identity(vec![0, 0]);
        let s = check_smith(&a, Ring::Poly);
        assert_eq!(s.invariant_exponents(), vec![0, 0]);
    }

    #[test]
    fn single_c() {
        // [[c]]: exponent (row - col)/2 = 1
        let a = HMat::new(vec![0], vec![-2], Matrix::from_i64(&[&[1]]));
        assert_eq!(check_smith(&a, Ring::Poly).invariant_exponents(), vec![1]);
        assert_eq!(check_smith(&a, Ring::Laurent).invariant_exponents(), vec![0]);
    }

    #[test]
    fn two_by_two_chain() {
        // [[c^2, c^3], [0, c]]
        let a = HMat::new(vec![0, -4], vec![-4, -6], Matrix::from_i64(&[&[1, 1], &[0, 1]]));
        a.check(Ring::Poly).unwrap();
        let s = check_smith(&a, Ring::Poly);
        assert_eq!(s.invariant_exponents(), vec![1, 2]);
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        let a = HMat::new(vec![0], vec![2], Matrix::from_i64(&[&[1]]));
        let err = a.smith(Ring::Poly).unwrap_err().to_string();
        assert!(err.contains("(0, 0)"), "{err}");
        let b = HMat::new(vec![0], vec![1], Matrix::from_i64(&[&[1]]));
        assert!(b.smith(Ring::Laurent).is_err());
    }

    #[test]
    fn kernel_of_relation_pair() {
        // (c, -1) from degrees: kernel of Q[c]^2 -> Q[c] sending (x, y) to c x - y
        let a = HMat::new(vec![0], vec![-2, 0], Matrix::from_i64(&[&[1, -1]]));
        let k = a.kernel(Ring::Poly).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).m.is_zero());
        k.check(Ring::Poly).unwrap();
    }
}
