//! The category `A(T)`: a nub `N` over `O_F`, a finite graded vertex `V`, and
//! `β : N -> E⁻¹O_F ⊗ V` with `E⁻¹β` an isomorphism.
//!
//! At each germ position the structure map is a scalar matrix (vertex × nub generators);
//! entry `(l, i)` multiplies `c^{(v_l - g_i)/2}`. Exceptional components may use negative
//! exponents. The generic component may not, since an element of `E⁻¹O_F` inverts
//! only finitely many `c_k`; there `E⁻¹β` being an isomorphism means `β` is an
//! isomorphism of `Q[c]`-lattices.

mod dg;
mod hom;
mod limits;
mod ops;
mod torsion;
mod wide;

pub use dg::{mapping_complex, DGTObject};
pub use hom::{hom_set, hom_window, HomSpace};
pub use limits::{cokernel_t, coproduct, kernel_t, product, pullback_t, pushout_t};
pub use ops::{dual, function_object, is_dualisable, tensor_t};
pub use torsion::{e_kernel, f_vertex, g, g_exactness_failures, g_truncated, GTruncated};
pub use wide::{cover, wide_sphere, CoverResult, WideSphereData};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::{dimension_function, AdmissibleRep, BaseRing, FpModule, QcPresentation};
use crate::exactlin::matrix::subspace;
use crate::exactlin::{GradedVec, HMat, Matrix, Rat, Ring};
use crate::germ::{union_indices, Germ, Index};

/// The nub presentation and the structure map at one germ position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPart {
    pub nub: QcPresentation,
    /// Vertex basis × nub generators.
    pub beta: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TObject {
    /// `O_F` for ordinary nubs, `E⁻¹O_F` for nubs such as `E⁻¹O_F ⊗ V`.
    pub ring: BaseRing,
    /// Degrees of the vertex basis vectors.
    pub vertex: Vec<i64>,
    pub parts: Germ<TPart>,
}

/// A map of degree `degree`: `theta` on nub generators (target × source) and `phi` on vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TMap {
    pub degree: i64,
    pub theta: Germ<Matrix>,
    pub phi: Matrix,
}

/// Validates raw data into an object of `A(T)`.
pub fn make_t(nub: &FpModule, vertex: Vec<i64>, beta: &Germ<Matrix>) -> Result<TObject> {
    let idx = union_indices(&[&nub.indices(), &beta.indices()]);
    let parts = Germ::tabulate(&idx, |i| TPart {
        nub: nub.comp(i).clone(),
        beta: beta.get(i).clone(),
    });
    let obj = TObject {
        ring: nub.ring,
        vertex,
        parts,
    };
    obj.validate()?;
    Ok(obj)
}

impl TObject {
    pub fn nub(&self) -> FpModule {
        FpModule {
            ring: self.ring,
            comps: self.parts.map(|p| p.nub.clone()),
        }
    }

    pub fn vertex_space(&self) -> GradedVec {
        GradedVec::from_basis_degrees(&self.vertex)
    }

    pub fn indices(&self) -> Vec<u64> {
        self.parts.indices()
    }

    pub fn part(&self, i: Index) -> &TPart {
        self.parts.get(i)
    }

    /// Ring for the nub at a position.
    pub fn nub_ring(&self, i: Index) -> Ring {
        self.ring.at(i)
    }

    /// Ring for the structure map at a position.
    pub fn beta_ring(i: Index) -> Ring {
        match i {
            Index::At(_) => Ring::Laurent,
            Index::Generic => Ring::Poly,
        }
    }

    pub fn beta_hmat(&self, i: Index) -> HMat {
        let p = self.part(i);
        HMat::new(self.vertex.clone(), p.nub.gens.clone(), p.beta.clone())
    }

    /// All degrees that occur in the data (generators, relations, vertex).
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut lo = self.vertex.iter().min().copied();
        let mut hi = self.vertex.iter().max().copied();
        for i in self.parts.positions() {
            if let Some((a, b)) = self.part(i).nub.degree_range() {
                lo = Some(lo.map_or(a, |x| x.min(a)));
                hi = Some(hi.map_or(b, |x| x.max(b)));
            }
        }
        lo.zip(hi)
    }

    pub fn validate(&self) -> Result<()> {
        for i in self.parts.positions() {
            self.validate_at(i).map_err(|e| e.context(i))?;
        }
        Ok(())
    }

    fn validate_at(&self, i: Index) -> Result<()> {
        let p = self.part(i);
        let nv = self.vertex.len();
        if p.beta.rows() != nv || p.beta.cols() != p.nub.ngens() {
            return Err(Error::invalid(format!(
                "structure map is {}x{} but vertex has {nv} vectors and nub {} generators",
                p.beta.rows(),
                p.beta.cols(),
                p.nub.ngens()
            )));
        }
        p.nub.check(self.nub_ring(i))?;
        self.beta_hmat(i).check(Self::beta_ring(i)).map_err(|e| e.context("structure map"))?;
        let killed = p.beta.mul(&p.nub.matrix);
        for j in 0..killed.cols() {
            if !killed.col(j).iter().all(|x| x.is_zero()) {
                return Err(Error::invalid(format!("structure map does not vanish on relation {j}")));
            }
        }
        match i {
            Index::At(_) => {
                for parity in [0, 1] {
                    self.check_iso_in_degree_at(i, parity, Ring::Laurent)?;
                }
            }
            Index::Generic => {
                if let Some((lo, hi)) = self.degree_range_at(i) {
                    for d in lo - 2..=hi {
                        self.check_iso_in_degree_at(i, d, Ring::Poly)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn degree_range_at(&self, i: Index) -> Option<(i64, i64)> {
        let all: Vec<i64> = self
            .vertex
            .iter()
            .chain(&self.part(i).nub.gens)
            .chain(&self.part(i).nub.rels)
            .copied()
            .collect();
        Some((*all.iter().min()?, *all.iter().max()?))
    }

    /// `β` in degree `d` at a position: nub generators in `F_d` to vertex vectors reachable in degree `d`.
    pub(crate) fn beta_in_degree(&self, i: Index, d: i64, ring: Ring) -> (Vec<usize>, Vec<usize>, Matrix) {
        let p = self.part(i);
        let f = p.nub.f_idx(d, ring);
        let rows: Vec<usize> = (0..self.vertex.len()).filter(|&l| ring.allows(self.vertex[l] - d)).collect();
        (f.clone(), rows.clone(), p.beta.select(&rows, &f))
    }

    fn check_iso_in_degree_at(&self, i: Index, d: i64, ring: Ring) -> Result<()> {
        let p = self.part(i);
        let (_, rows, b) = self.beta_in_degree(i, d, ring);
        let dim = p.nub.dim(d, ring);
        if b.rank() < rows.len() {
            return Err(Error::invalid(format!("E^-1 beta is not surjective in degree {d}")));
        }
        if dim > rows.len() {
            return Err(Error::invalid(format!("E^-1 beta is not injective in degree {d}")));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &TObject) -> Result<TObject> {
        if self.ring != other.ring {
            return Err(Error::unsupported("direct sum of an O_F nub with a localized nub"));
        }
        let ring = self.ring;
        let mut vertex = self.vertex.clone();
        vertex.extend(&other.vertex);
        let parts = self.parts.zip(&other.parts, |a, b| TPart {
            nub: a.nub.direct_sum(&b.nub),
            beta: a.beta.block_diag(&b.beta),
        });
        Ok(TObject { ring, vertex, parts })
    }

    /// Integer suspension `Σ^s`.
    pub fn shift(&self, s: i64) -> TObject {
        TObject {
            ring: self.ring,
            vertex: self.vertex.iter().map(|v| v + s).collect(),
            parts: self.parts.map(|p| TPart {
                nub: p.nub.shift(s),
                beta: p.beta.clone(),
            }),
        }
    }

    /// `Σ^{±V}`: shifts the nub at `k` by `±2 v(k)` and multiplies the structure map by `c^{∓V}`.
    pub fn sigma_rep(&self, v: &AdmissibleRep, positive: bool) -> TObject {
        let e = dimension_function(v);
        let sign = if positive { 1 } else { -1 };
        let idx = union_indices(&[&self.indices(), &e.support()]);
        TObject {
            ring: self.ring,
            vertex: self.vertex.clone(),
            parts: Germ::tabulate(&idx, |i| {
                let p = self.part(i);
                TPart {
                    nub: p.nub.shift(sign * 2 * e.exponent_at(i) as i64),
                    beta: p.beta.clone(),
                }
            }),
        }
    }

    pub fn zero() -> TObject {
        TObject {
            ring: BaseRing::OF,
            vertex: Vec::new(),
            parts: Germ::constant(TPart {
                nub: QcPresentation::zero(),
                beta: Matrix::zeros(0, 0),
            }),
        }
    }

    /// Degreewise dimensions of the nub at a position and of the vertex, for comparisons.
    pub fn profile(&self, positions: &[Index], lo: i64, hi: i64) -> Vec<usize> {
        let mut out = Vec::new();
        for &i in positions {
            for d in lo..=hi {
                out.push(self.part(i).nub.dim(d, self.nub_ring(i)));
            }
        }
        for d in lo..=hi {
            out.push(self.vertex.iter().filter(|&&v| v == d).count());
        }
        out
    }
}

pub(crate) fn join_ring(a: BaseRing, b: BaseRing) -> BaseRing {
    if a == BaseRing::Localized || b == BaseRing::Localized {
        BaseRing::Localized
    } else {
        BaseRing::OF
    }
}

/// The unit `S⁰ = (O_F -> E⁻¹O_F ⊗ Q)`.
pub fn s0() -> TObject {
    TObject {
        ring: BaseRing::OF,
        vertex: vec![0],
        parts: Germ::constant(TPart {
            nub: QcPresentation::free(vec![0]),
            beta: Matrix::identity(1),
        }),
    }
}

/// The representation sphere `S^V = (O_F(V) -> E⁻¹O_F)`.
pub fn rep_sphere(v: &AdmissibleRep) -> TObject {
    s0().sigma_rep(v, true)
}

impl TMap {
    pub fn zero(source: &TObject, target: &TObject, degree: i64) -> TMap {
        let idx = union_indices(&[&source.indices(), &target.indices()]);
        TMap {
            degree,
            theta: Germ::tabulate(&idx, |i| Matrix::zeros(target.part(i).nub.ngens(), source.part(i).nub.ngens())),
            phi: Matrix::zeros(target.vertex.len(), source.vertex.len()),
        }
    }

    pub fn identity(a: &TObject) -> TMap {
        TMap {
            degree: 0,
            theta: a.parts.map(|p| Matrix::identity(p.nub.ngens())),
            phi: Matrix::identity(a.vertex.len()),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &TMap) -> TMap {
        TMap {
            degree: self.degree + first.degree,
            theta: self.theta.zip(&first.theta, |a, b| a.mul(b)),
            phi: self.phi.mul(&first.phi),
        }
    }

    pub fn add(&self, other: &TMap) -> TMap {
        TMap {
            degree: self.degree,
            theta: self.theta.zip(&other.theta, |a, b| a.add(b)),
            phi: self.phi.add(&other.phi),
        }
    }

    pub fn scale(&self, s: &Rat) -> TMap {
        TMap {
            degree: self.degree,
            theta: self.theta.map(|a| a.scale(s)),
            phi: self.phi.scale(s),
        }
    }

    /// Checks homogeneity, well-definedness on relations, and commutation with the structure maps.
    pub fn validate(&self, source: &TObject, target: &TObject) -> Result<()> {
        let t = self.degree;
        for (l, &vl) in target.vertex.iter().enumerate() {
            for (m, &vm) in source.vertex.iter().enumerate() {
                if !self.phi.get(l, m).is_zero() && vl != vm + t {
                    return Err(Error::invalid(format!("vertex map entry ({l}, {m}) has the wrong degree")));
                }
            }
        }
        let idx = union_indices(&[&source.indices(), &target.indices(), &self.theta.indices()]);
        let positions: Vec<Index> = idx.iter().map(|&k| Index::At(k)).chain([Index::Generic]).collect();
        for i in positions {
            let (sp, tp) = (source.part(i), target.part(i));
            let th = self.theta.get(i);
            let ring = map_ring(source.nub_ring(i), target.nub_ring(i));
            let h = crate::euler::map_hmat(&tp.nub, &sp.nub, t, th.clone());
            match ring {
                Some(r) => h.check(r).map_err(|e| e.context(format!("nub map at {i}")))?,
                None if !th.is_zero() => {
                    return Err(Error::invalid(format!("nub map at {i} sends a localized module into a finitely generated one")))
                }
                None => {}
            }
            let img = th.mul(&sp.nub.matrix);
            let tr = target.nub_ring(i);
            for j in 0..sp.nub.rels.len() {
                if !tp.nub.is_zero_element(sp.nub.rels[j] + t, tr, &img.col(j)) {
                    return Err(Error::invalid(format!("nub map at {i} is not well defined on relation {j}")));
                }
            }
            if tp.beta.mul(th) != self.phi.mul(&sp.beta) {
                return Err(Error::invalid(format!("square with the structure maps does not commute at {i}")));
            }
        }
        Ok(())
    }

    /// Whether the map is zero (nub images lie in the relations, vertex map vanishes).
    pub fn is_zero_map(&self, source: &TObject, target: &TObject) -> bool {
        if !self.phi.is_zero() {
            return false;
        }
        let idx = union_indices(&[&source.indices(), &target.indices(), &self.theta.indices()]);
        idx.iter().map(|&k| Index::At(k)).chain([Index::Generic]).all(|i| {
            let th = self.theta.get(i);
            let sp = source.part(i);
            let tp = target.part(i);
            (0..sp.nub.ngens()).all(|a| tp.nub.is_zero_element(sp.nub.gens[a] + self.degree, target.nub_ring(i), &th.col(a)))
        })
    }
}

/// Ring in which nub-map coefficients live, or `None` if only the zero map exists.
pub(crate) fn map_ring(source: Ring, target: Ring) -> Option<Ring> {
    match (source, target) {
        (Ring::Laurent, Ring::Poly) => None,
        (_, Ring::Laurent) => Some(Ring::Laurent),
        _ => Some(Ring::Poly),
    }
}

/// Basis of a subspace spanned by columns, as a graded inclusion: returns the degrees of the
/// new basis and the inclusion matrix (ambient × new), given the ambient basis degrees.
pub(crate) fn graded_basis(ambient: &[i64], span: &Matrix, span_degrees: &[i64]) -> (Vec<i64>, Matrix) {
    let mut degs: Vec<i64> = span_degrees.to_vec();
    degs.sort();
    degs.dedup();
    let mut out_deg = Vec::new();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for d in degs {
        let idx: Vec<usize> = (0..span.cols()).filter(|&j| span_degrees[j] == d).collect();
        let b = subspace::basis(&span.select_cols(&idx));
        for j in 0..b.cols() {
            out_deg.push(d);
            cols.push(b.col(j));
        }
    }
    (out_deg, Matrix::from_cols(ambient.len(), &cols))
}
