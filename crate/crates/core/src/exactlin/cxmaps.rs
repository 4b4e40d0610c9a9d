//! Chain maps: kernels, cokernels, tensor products, and composition on mapping complexes.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::chain::{hom_layout, tensor_blocks, ChainCx};
use super::graded::{GradedMap, GradedVec};
use super::matrix::{subspace, Matrix};
use crate::error::{Error, Result};

/// Whether `f : a -> b` commutes with the differentials up to the sign `(-1)^shift`.
pub fn is_chain_map(f: &GradedMap, a: &ChainCx, b: &ChainCx) -> bool {
    if &f.source != a.spaces() || &f.target != b.spaces() {
        return false;
    }
    let sign = super::rat::sign_pow(f.shift);
    a.spaces().degrees().chain(a.spaces().degrees().map(|n| n + 1)).all(|n| {
        let lhs = b.diff(n + f.shift).mul(&f.block(n));
        let rhs = f.block(n - 1).mul(&a.diff(n)).scale(&sign);
        lhs == rhs
    })
}

/// The kernel of a degree-zero chain map, with its inclusion.
pub fn kernel(f: &GradedMap, a: &ChainCx) -> Result<(ChainCx, GradedMap)> {
    let mut basis = BTreeMap::new();
    for n in a.spaces().degrees() {
        let k = f.block(n).kernel();
        if k.cols() > 0 {
            basis.insert(n, k);
        }
    }
    let sub = a.subcomplex(&basis)?;
    let mut incl = GradedMap::zero(sub.spaces().clone(), a.spaces().clone(), 0);
    for (n, b) in basis {
        incl.set_block(n, b);
    }
    Ok((sub, incl))
}

/// The cokernel of a degree-zero chain map `f : x -> b`, with its projection.
pub fn cokernel(f: &GradedMap, b: &ChainCx) -> Result<(ChainCx, GradedMap)> {
    let mut q = BTreeMap::new();
    let mut spaces = GradedVec::zero();
    for n in b.spaces().degrees() {
        let m = subspace::quotient_map(b.spaces().dim(n), &f.block(n));
        spaces.add_dim(n, m.rows());
        q.insert(n, m);
    }
    let mut proj = GradedMap::zero(b.spaces().clone(), spaces.clone(), 0);
    let mut diffs = BTreeMap::new();
    for (&n, m) in &q {
        proj.set_block(n, m.clone());
        if m.rows() == 0 {
            continue;
        }
        let s = section(m)?;
        let below = q.get(&(n - 1)).cloned().unwrap_or_else(|| Matrix::zeros(0, b.spaces().dim(n - 1)));
        diffs.insert(n, below.mul(&b.diff(n)).mul(&s));
    }
    let cx = ChainCx::from_diffs(spaces, diffs).map_err(|e| e.context("cokernel"))?;
    Ok((cx, proj))
}

/// A right inverse of a surjective matrix.
pub fn section(m: &Matrix) -> Result<Matrix> {
    m.solve_matrix(&Matrix::identity(m.rows()))
        .ok_or_else(|| Error::defect("quotient map is not surjective"))
}

/// `f ⊗ g` for degree-zero maps, in the basis order of [`ChainCx::tensor`].
pub fn tensor_map(f: &GradedMap, g: &GradedMap) -> GradedMap {
    assert!(f.shift == 0 && g.shift == 0, "tensor of shifted maps");
    let source = f.source.tensor(&g.source);
    let target = f.target.tensor(&g.target);
    let mut out = GradedMap::zero(source.clone(), target.clone(), 0);
    for n in source.degrees() {
        let mut m = Matrix::zeros(target.dim(n), source.dim(n));
        let rows = tensor_blocks(&f.target, &g.target, n);
        for (p, q, col0) in tensor_blocks(&f.source, &g.source, n) {
            if let Some(&(_, _, row0)) = rows.iter().find(|b| b.0 == p) {
                m.paste(row0, col0, &f.block(p).kron(&g.block(q)));
            }
        }
        out.set_block(n, m);
    }
    out
}

/// `g ↦ g ∘ f` from `Hom(b, c)_n` to `Hom(a, c)_n`, for a degree-zero `f : a -> b`.
pub fn precompose(f: &GradedMap, c: &GradedVec, n: i64) -> Matrix {
    let (a, b) = (&f.source, &f.target);
    let src = hom_layout(b, c, n);
    let tgt = hom_layout(a, c, n);
    let mut m = Matrix::zeros(a.hom(c).dim(n), b.hom(c).dim(n));
    for &(p, col0) in &src {
        let Some(&(_, row0)) = tgt.iter().find(|x| x.0 == p) else { continue };
        let fp = f.block(p);
        let (rb, ra, rc) = (b.dim(p), a.dim(p), c.dim(p + n));
        for i in 0..rc {
            for l in 0..rb {
                for j in 0..ra {
                    let v = fp.get(l, j);
                    if !v.is_zero() {
                        m.set(row0 + i * ra + j, col0 + i * rb + l, v.clone());
                    }
                }
            }
        }
    }
    m
}

/// `x ↦ f ∘ x` from `Hom(a, b)_n` to `Hom(a, c)_n`, for a degree-zero `f : b -> c`.
pub fn postcompose(f: &GradedMap, a: &GradedVec, n: i64) -> Matrix {
    let (b, c) = (&f.source, &f.target);
    let src = hom_layout(a, b, n);
    let tgt = hom_layout(a, c, n);
    let mut m = Matrix::zeros(a.hom(c).dim(n), a.hom(b).dim(n));
    for &(p, col0) in &src {
        let Some(&(_, row0)) = tgt.iter().find(|x| x.0 == p) else { continue };
        let fq = f.block(p + n);
        let (ra, rb, rc) = (a.dim(p), b.dim(p + n), c.dim(p + n));
        for l in 0..rb {
            for j in 0..ra {
                for i in 0..rc {
                    let v = fq.get(i, l);
                    if !v.is_zero() {
                        m.set(row0 + i * ra + j, col0 + l * ra + j, v.clone());
                    }
                }
            }
        }
    }
    m
}

/// The inclusion of the first summand of `a ⊕ b`.
pub fn inclusion_first(a: &GradedVec, b: &GradedVec) -> GradedMap {
    let sum = a.direct_sum(b);
    let mut out = GradedMap::zero(a.clone(), sum.clone(), 0);
    for n in a.degrees() {
        out.set_block(n, Matrix::identity(a.dim(n)).vstack(&Matrix::zeros(b.dim(n), a.dim(n))));
    }
    out
}

/// The projection of `a ⊕ b` onto its first summand.
pub fn projection_first(a: &GradedVec, b: &GradedVec) -> GradedMap {
    let sum = a.direct_sum(b);
    let mut out = GradedMap::zero(sum, a.clone(), 0);
    for n in a.degrees() {
        out.set_block(n, Matrix::identity(a.dim(n)).hstack(&Matrix::zeros(a.dim(n), b.dim(n))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::int;

    fn disk() -> ChainCx {
        let mut d = BTreeMap::new();
        d.insert(1, Matrix::from_i64(&[&[1]]));
        ChainCx::from_diffs(GradedVec::new([(0, 1), (1, 1)]), d).unwrap()
    }

    #[test]
    fn kernel_and_cokernel_of_projection_to_disk_top() {
        let d = disk();
        // identity has zero kernel and zero cokernel
        let id = GradedMap::identity(d.spaces());
        assert!(kernel(&id, &d).unwrap().0.spaces().is_zero());
        assert!(cokernel(&id, &d).unwrap().0.spaces().is_zero());
        // inclusion of the bottom cell has cokernel the top cell
        let bottom = ChainCx::graded(GradedVec::concentrated(0, 1));
        let mut inc = GradedMap::zero(bottom.spaces().clone(), d.spaces().clone(), 0);
        inc.set_block(0, Matrix::from_i64(&[&[1]]));
        assert!(is_chain_map(&inc, &bottom, &d));
        let (q, p) = cokernel(&inc, &d).unwrap();
        assert_eq!(q.spaces(), &GradedVec::concentrated(1, 1));
        assert!(is_chain_map(&p, &d, &q));
    }

    #[test]
    fn composition_matrices_agree_with_products() {
        let a = GradedVec::new([(0, 2), (1, 1)]);
        let b = GradedVec::new([(0, 3), (1, 2)]);
        let c = GradedVec::new([(0, 1), (1, 2), (2, 1)]);
        let mut f = GradedMap::zero(a.clone(), b.clone(), 0);
        f.set_block(0, Matrix::from_i64(&[&[1, 2], &[0, 1], &[3, -1]]));
        f.set_block(1, Matrix::from_i64(&[&[2], &[5]]));
        for n in -1..=2 {
            let pre = precompose(&f, &c, n);
            let post = postcompose(&f, &GradedVec::concentrated(0, 1), n);
            assert_eq!(pre.rows(), a.hom(&c).dim(n));
            assert_eq!(post.cols(), GradedVec::concentrated(0, 1).hom(&a).dim(n));
        }
        // explicit check in degree 1: g in Hom(b_0, c_1) = 2x3
        let g = Matrix::from_i64(&[&[1, 0, 2], &[0, 1, 1]]);
        let flat: Vec<_> = (0..2).flat_map(|i| (0..3).map(move |l| (i, l))).map(|(i, l)| g.get(i, l).clone()).collect();
        let pre = precompose(&f, &c, 1);
        let got = pre.apply(&[flat, vec![int(0); b.hom(&c).dim(1) - 6]].concat());
        let want = g.mul(&f.block(0));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(got[i * 2 + j], *want.get(i, j));
            }
        }
    }

    #[test]
    fn tensor_of_identities() {
        let a = GradedVec::new([(0, 2), (1, 1)]);
        let b = GradedVec::new([(0, 1), (2, 2)]);
        let t = tensor_map(&GradedMap::identity(&a), &GradedMap::identity(&b));
        assert_eq!(t, GradedMap::identity(&a.tensor(&b)));
    }
}
