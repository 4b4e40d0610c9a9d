//! Objects of `A(T)` with a differential, and their mapping complexes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::rat::sign_pow;
use crate::exactlin::{ChainCx, GradedVec, Matrix};
use crate::germ::Index;

use super::{hom_set, TMap, TObject};

/// An object with a self-map `d` of degree `-1` squaring to zero. Since `d` is a map in
/// `A(T)`, the nub differential is `O_F`-linear and `β` is a chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGTObject {
    pub obj: TObject,
    pub d: TMap,
}

impl DGTObject {
    pub fn new(obj: TObject, d: TMap) -> Result<Self> {
        if d.degree != -1 {
            return Err(Error::invalid(format!("differential has degree {} instead of -1", d.degree)));
        }
        d.validate(&obj, &obj).map_err(|e| e.context("differential"))?;
        if !d.compose(&d).is_zero_map(&obj, &obj) {
            return Err(Error::invalid("d∘d is nonzero"));
        }
        Ok(DGTObject { obj, d })
    }

    /// Zero differential.
    pub fn formal(obj: TObject) -> Self {
        let d = TMap::zero(&obj, &obj, -1);
        DGTObject { obj, d }
    }

    /// The nub differential out of degree `n` at a position, in bases of the degree parts.
    fn nub_diff(&self, i: Index, n: i64) -> Matrix {
        let p = &self.obj.part(i).nub;
        let ring = self.obj.nub_ring(i);
        p.quotient_map(n - 1, ring).mul(self.d.theta.get(i)).mul(&p.basis_lifts(n, ring))
    }

    /// Dimension of the homology of the nub in degree `n` at a position.
    pub fn nub_homology(&self, i: Index, n: i64) -> usize {
        let ring = self.obj.nub_ring(i);
        let dim = self.obj.part(i).nub.dim(n, ring);
        dim - self.nub_diff(i, n).rank() - self.nub_diff(i, n + 1).rank()
    }

    pub fn vertex_complex(&self) -> Result<ChainCx> {
        let spaces = self.obj.vertex_space();
        let mut diffs = BTreeMap::new();
        for n in spaces.degrees().collect::<Vec<_>>() {
            let src: Vec<usize> = (0..self.obj.vertex.len()).filter(|&l| self.obj.vertex[l] == n).collect();
            let tgt: Vec<usize> = (0..self.obj.vertex.len()).filter(|&l| self.obj.vertex[l] == n - 1).collect();
            diffs.insert(n, self.d.phi.select(&tgt, &src));
        }
        ChainCx::from_diffs(spaces, diffs)
    }

    pub fn vertex_homology(&self) -> Result<GradedVec> {
        Ok(self.vertex_complex()?.homology())
    }

    /// Nub homology dimensions at the given positions for `lo..=hi`, then vertex homology.
    pub fn homology_profile(&self, positions: &[Index], lo: i64, hi: i64) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &i in positions {
            for n in lo..=hi {
                out.push(self.nub_homology(i, n));
            }
        }
        let h = self.vertex_homology()?;
        out.extend((lo..=hi).map(|n| h.dim(n)));
        Ok(out)
    }
}

/// The mapping complex `A(A, B)_n` for `n` in `lo..=hi` with `df = d_B f + (-1)^{n+1} f d_A`.
/// Differentials leaving degree `lo` are dropped, so homology is only meaningful strictly
/// inside the window.
pub fn mapping_complex(a: &DGTObject, b: &DGTObject, lo: i64, hi: i64) -> Result<ChainCx> {
    let mut homs = BTreeMap::new();
    for n in lo..=hi {
        homs.insert(n, hom_set(&a.obj, &b.obj, n)?);
    }
    let spaces = GradedVec::new(homs.iter().map(|(&n, h)| (n, h.dim())));
    let mut diffs = BTreeMap::new();
    for n in lo + 1..=hi {
        let (src, tgt) = (&homs[&n], &homs[&(n - 1)]);
        let sign = sign_pow(n + 1);
        let mut cols = Vec::new();
        for f in &src.basis {
            let df = b.d.compose(f).add(&f.compose(&a.d).scale(&sign));
            let x = tgt
                .coordinates(&df)
                .ok_or_else(|| Error::defect(format!("mapping complex differential leaves Hom in degree {}", n - 1)))?;
            cols.push(x);
        }
        diffs.insert(n, Matrix::from_cols(tgt.dim(), &cols));
    }
    ChainCx::from_diffs(spaces, diffs)
}
