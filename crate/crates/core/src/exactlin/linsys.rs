//! Linear systems whose unknowns are matrices with prescribed zero patterns.
//!
//! Every Hom computation in the models reduces to finding all tuples of scalar matrices
//! `X_1, ..., X_r` (each allowed to be nonzero only in certain positions) satisfying
//! equations `Σ L_t X_t R_t = C`.

use num_traits::Zero;

use super::matrix::Matrix;
use super::rat::Rat;

#[derive(Clone, Debug)]
struct Block {
    rows: usize,
    cols: usize,
    positions: Vec<(usize, usize)>,
    offset: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId(usize);

#[derive(Clone, Debug, Default)]
pub struct LinSys {
    blocks: Vec<Block>,
    nvars: usize,
    rows: Vec<(Vec<(usize, Rat)>, Rat)>,
}

/// The solution set: `particular + span(kernel columns)`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Rat>,
    pub kernel: Matrix,
}

impl LinSys {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a `rows x cols` unknown whose entry `(i, j)` is free iff `allowed(i, j)`.
    pub fn block(&mut self, rows: usize, cols: usize, allowed: impl Fn(usize, usize) -> bool) -> BlockId {
        let mut positions = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                if allowed(i, j) {
                    positions.push((i, j));
                }
            }
        }
        let offset = self.nvars;
        self.nvars += positions.len();
        self.blocks.push(Block {
            rows,
            cols,
            positions,
            offset,
        });
        BlockId(self.blocks.len() - 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Variable range of a block inside the solution vector.
    pub fn range(&self, b: BlockId) -> std::ops::Range<usize> {
        let blk = &self.blocks[b.0];
        blk.offset..blk.offset + blk.positions.len()
    }

    /// Adds the matrix equation `Σ L_t X_t R_t = rhs`; `None` for `L` or `R` means identity.
    pub fn equation(&mut self, terms: &[(BlockId, Option<&Matrix>, Option<&Matrix>)], rhs: &Matrix) {
        let (nr, nc) = (rhs.rows(), rhs.cols());
        let mut coeffs: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); nr * nc];
        for &(b, l, r) in terms {
            let blk = &self.blocks[b.0];
            for (k, &(a, bcol)) in blk.positions.iter().enumerate() {
                let var = blk.offset + k;
                // coefficient of X_{a,bcol} in (L X R)_{i,j} is L_{i,a} R_{bcol,j}
                let lcol: Vec<(usize, Rat)> = match l {
                    Some(l) => (0..nr).filter_map(|i| nz(l.get(i, a)).map(|v| (i, v))).collect(),
                    None => vec![(a, Rat::from_integer(1.into()))],
                };
                let rrow: Vec<(usize, Rat)> = match r {
                    Some(r) => (0..nc).filter_map(|j| nz(r.get(bcol, j)).map(|v| (j, v))).collect(),
                    None => vec![(bcol, Rat::from_integer(1.into()))],
                };
                for (i, lv) in &lcol {
                    for (j, rv) in &rrow {
                        coeffs[i * nc + j].push((var, lv * rv));
                    }
                }
            }
        }
        for (idx, row) in coeffs.into_iter().enumerate() {
            let rhs_v = rhs.get(idx / nc, idx % nc).clone();
            if row.is_empty() && rhs_v.is_zero() {
                continue;
            }
            self.rows.push((row, rhs_v));
        }
    }

    fn dense(&self) -> (Matrix, Vec<Rat>) {
        let mut a = Matrix::zeros(self.rows.len(), self.nvars);
        let mut b = Vec::with_capacity(self.rows.len());
        for (r, (row, rhs)) in self.rows.iter().enumerate() {
            for (v, c) in row {
                let cur = a.get(r, *v).clone();
                a.set(r, *v, cur + c);
            }
            b.push(rhs.clone());
        }
        (a, b)
    }

    pub fn solve(&self) -> Option<Solution> {
        let (a, b) = self.dense();
        if self.nvars == 0 {
            return b.iter().all(|x| x.is_zero()).then(|| Solution {
                particular: Vec::new(),
                kernel: Matrix::zeros(0, 0),
            });
        }
        if a.rows() == 0 {
            return Some(Solution {
                particular: vec![Rat::zero(); self.nvars],
                kernel: Matrix::identity(self.nvars),
            });
        }
        let particular = a.solve(&b)?;
        Some(Solution {
            particular,
            kernel: a.kernel(),
        })
    }

    /// Reads a block back out of a solution vector.
    pub fn extract(&self, b: BlockId, x: &[Rat]) -> Matrix {
        let blk = &self.blocks[b.0];
        let mut m = Matrix::zeros(blk.rows, blk.cols);
        for (k, &(i, j)) in blk.positions.iter().enumerate() {
            m.set(i, j, x[blk.offset + k].clone());
        }
        m
    }

    /// Flattens a matrix into the block's variable order (entries outside the pattern are dropped).
    pub fn flatten(&self, b: BlockId, m: &Matrix) -> Vec<Rat> {
        self.blocks[b.0].positions.iter().map(|&(i, j)| m.get(i, j).clone()).collect()
    }
}

fn nz(v: &Rat) -> Option<Rat> {
    (!v.is_zero()).then(|| v.clone())
}
