//! Exact linear algebra over Q, Q[c] and Q[c, c^-1].

pub mod chain;
pub mod cxmaps;
pub mod graded;
pub mod linsys;
pub mod matrix;
pub mod rat;
pub mod smith;
pub mod wvec;

pub use chain::ChainCx;
pub use graded::{GradedMap, GradedVec};
pub use matrix::Matrix;
pub use rat::Rat;
pub use smith::{HMat, Ring, Smith};
pub use wvec::{w_fixed, w_fixed_map, WChainCx, WMap, WVec};

use crate::error::{Error, Result};

/// The pullback `P = {(a, b) : f(a) = g(b)}` of `f : A -> C` and `g : B -> C`.
#[derive(Clone, Debug)]
pub struct Pullback {
    /// `P -> A`, one column per basis vector of `P`.
    pub to_a: Matrix,
    /// `P -> B`.
    pub to_b: Matrix,
}

impl Pullback {
    pub fn dim(&self) -> usize {
        self.to_a.cols()
    }

    /// The unique map `X -> P` induced by `x : X -> A`, `y : X -> B` with `f x = g y`.
    pub fn induced(&self, x: &Matrix, y: &Matrix) -> Option<Matrix> {
        let stacked = self.to_a.vstack(&self.to_b);
        stacked.solve_matrix(&x.vstack(y))
    }
}

pub fn linear_pullback(f: &Matrix, g: &Matrix) -> Result<Pullback> {
    if f.rows() != g.rows() {
        return Err(Error::invalid(format!(
            "pullback of maps with different codomains ({} and {})",
            f.rows(),
            g.rows()
        )));
    }
    let k = f.hstack(&g.scale(&-rat::one())).kernel();
    let a_rows: Vec<usize> = (0..f.cols()).collect();
    let b_rows: Vec<usize> = (f.cols()..f.cols() + g.cols()).collect();
    Ok(Pullback {
        to_a: k.select_rows(&a_rows),
        to_b: k.select_rows(&b_rows),
    })
}

/// Degreewise pullback of degree-preserving graded maps.
pub fn graded_pullback(f: &GradedMap, g: &GradedMap) -> Result<(GradedVec, GradedMap, GradedMap)> {
    if f.target != g.target || f.shift != 0 || g.shift != 0 {
        return Err(Error::invalid("pullback needs degree-preserving maps into the same space"));
    }
    let mut degs: Vec<i64> = f.source.degrees().chain(g.source.degrees()).collect();
    degs.sort();
    degs.dedup();
    let mut parts = Vec::new();
    let mut p = GradedVec::zero();
    for &d in &degs {
        let pb = linear_pullback(&f.block(d), &g.block(d))?;
        p.add_dim(d, pb.dim());
        parts.push((d, pb));
    }
    let mut pa = GradedMap::zero(p.clone(), f.source.clone(), 0);
    let mut pb_map = GradedMap::zero(p.clone(), g.source.clone(), 0);
    for (d, pb) in parts {
        if pb.dim() > 0 {
            pa.set_block(d, pb.to_a);
            pb_map.set_block(d, pb.to_b);
        }
    }
    Ok((p, pa, pb_map))
}
