//! Modules over the ring diagram `R_a = (O_F -> E⁻¹O_F <- Q)`.
//!
//! A module is `(a, α, b, γ, c)` with `α : E⁻¹a -> b` and `γ : E⁻¹O_F ⊗ c -> b`. The
//! functor `k` sends `β : N -> E⁻¹O_F ⊗ V` to `(N, id, E⁻¹N, β⁻¹, V)`, and its right
//! adjoint `Γ_v` takes the pullback of `a -> b <- E⁻¹O_F ⊗ c`.

use crate::error::{Error, Result};
use crate::euler::{BaseRing, FpModule};
use crate::exactlin::linsys::LinSys;
use crate::exactlin::rat::one;
use crate::exactlin::{HMat, Matrix, Ring};
use crate::germ::{union_indices, Germ, Index};
use crate::model_t::{TObject, TPart};

use super::{check_signs, is_equivariant, CObject, Signs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaDiagramModule {
    pub a: FpModule,
    pub a_signs: Germ<Signs>,
    /// A module over `E⁻¹O_F`.
    pub b: FpModule,
    pub b_signs: Germ<Signs>,
    /// Degrees of a basis of `c`.
    pub c: Vec<i64>,
    pub c_signs: Signs,
    /// `b` generators × `a` generators.
    pub alpha: Germ<Matrix>,
    /// `b` generators × basis of `c`.
    pub gamma: Germ<Matrix>,
}

fn positions(m: &RaDiagramModule) -> Vec<Index> {
    let idx = union_indices(&[
        &m.a.indices(),
        &m.b.indices(),
        &m.alpha.indices(),
        &m.gamma.indices(),
        &m.a_signs.indices(),
        &m.b_signs.indices(),
    ]);
    idx.iter().map(|&k| Index::At(k)).chain([Index::Generic]).collect()
}

/// Ring for maps into `b` at a position.
fn b_ring(i: Index) -> Ring {
    TObject::beta_ring(i)
}

impl RaDiagramModule {
    pub fn validate(&self) -> Result<()> {
        if self.a.ring != BaseRing::OF || self.b.ring != BaseRing::Localized {
            return Err(Error::invalid("expected a over O_F and b over E^-1 O_F"));
        }
        self.a.check()?;
        self.b.check()?;
        check_signs(&self.c_signs, self.c.len(), "c")?;
        for i in positions(self) {
            let (pa, pb) = (self.a.comp(i), self.b.comp(i));
            let (sa, sb) = (self.a_signs.get(i), self.b_signs.get(i));
            let (al, ga) = (self.alpha.get(i), self.gamma.get(i));
            let ring = b_ring(i);
            let ctx = |e: Error| e.context(i);
            check_signs(sa, pa.ngens(), "a").map_err(ctx)?;
            check_signs(sb, pb.ngens(), "b").map_err(ctx)?;
            if (al.rows(), al.cols()) != (pb.ngens(), pa.ngens()) || (ga.rows(), ga.cols()) != (pb.ngens(), self.c.len()) {
                return Err(ctx(Error::invalid("alpha or gamma has the wrong shape")));
            }
            HMat::new(pb.gens.clone(), pa.gens.clone(), al.clone()).check(ring).map_err(|e| ctx(e.context("alpha")))?;
            HMat::new(pb.gens.clone(), self.c.clone(), ga.clone()).check(ring).map_err(|e| ctx(e.context("gamma")))?;
            let img = al.mul(&pa.matrix);
            for j in 0..pa.rels.len() {
                if !pb.is_zero_element(pa.rels[j], ring, &img.col(j)) {
                    return Err(ctx(Error::invalid(format!("alpha is not well defined on relation {j}"))));
                }
            }
            if !is_equivariant(pb, sb, &pa.gens, sa, al, 0, ring) || !is_equivariant(pb, sb, &self.c, &self.c_signs, ga, 0, ring) {
                return Err(ctx(Error::invalid("alpha or gamma is not W-equivariant")));
            }
        }
        Ok(())
    }

    /// Whether `γ` is an isomorphism at a position: degreewise over the Laurent ring at
    /// exceptional positions, and over a degree window at the generic one.
    fn gamma_is_iso(&self, i: Index) -> bool {
        let pb = self.b.comp(i);
        let g = self.gamma.get(i);
        let ring = b_ring(i);
        let degrees: Vec<i64> = match i {
            Index::At(_) => vec![0, 1],
            Index::Generic => {
                let all: Vec<i64> = pb.gens.iter().chain(&pb.rels).chain(&self.c).copied().collect();
                match (all.iter().min(), all.iter().max()) {
                    (Some(&lo), Some(&hi)) => (lo - 2..=hi).collect(),
                    _ => vec![],
                }
            }
        };
        degrees.into_iter().all(|d| {
            let cols: Vec<usize> = (0..self.c.len()).filter(|&l| ring.allows(self.c[l] - d)).collect();
            let m = pb.quotient_map(d, ring).mul(&g.select_cols(&cols));
            m.rows() == cols.len() && m.rank() == cols.len()
        })
    }
}

/// `k(A) = (N, id, E⁻¹N, β⁻¹, V)`.
pub fn include_k(a: &CObject) -> Result<RaDiagramModule> {
    let base = &a.base;
    if base.ring != BaseRing::OF {
        return Err(Error::unsupported("include_k of an object with a localized nub"));
    }
    let nv = base.vertex.len();
    let gamma = base.parts.try_map(|i, p| -> Result<Matrix> {
        let ring = TObject::beta_ring(i);
        let mut sys = LinSys::new();
        let g = sys.block(p.nub.ngens(), nv, |h, l| ring.allows(p.nub.gens[h] - base.vertex[l]));
        sys.equation(&[(g, Some(&p.beta), None)], &Matrix::identity(nv));
        let sol = sys
            .solve()
            .ok_or_else(|| Error::defect(format!("structure map has no inverse at {i}")))?;
        Ok(sys.extract(g, &sol.particular))
    })?;
    let out = RaDiagramModule {
        a: base.nub(),
        a_signs: a.nub_signs.clone(),
        b: FpModule {
            ring: BaseRing::Localized,
            comps: base.parts.map(|p| p.nub.clone()),
        },
        b_signs: a.nub_signs.clone(),
        c: base.vertex.clone(),
        c_signs: a.vertex_signs.clone(),
        alpha: base.parts.map(|p| Matrix::identity(p.nub.ngens())),
        gamma,
    };
    out.validate().map_err(|e| e.context("include_k"))?;
    Ok(out)
}

/// `Γ_v(M) = (δ : P -> E⁻¹O_F ⊗ c)` for the pullback `P` of `a -> b <- E⁻¹O_F ⊗ c`.
///
/// When `γ` is an isomorphism `P = a` and `δ = γ⁻¹α`. Otherwise `P` contains `ker γ` or
/// misses part of `a`, which has no finite presentation in general; only the case
/// `a = 0 = c` is handled, where the pullback vanishes.
pub fn gamma_v(m: &RaDiagramModule) -> Result<CObject> {
    m.validate()?;
    if m.c.is_empty() && m.a.is_zero()? {
        return Ok(CObject {
            base: TObject::zero(),
            nub_signs: Germ::constant(Vec::new()),
            vertex_signs: Vec::new(),
        });
    }
    let pos = positions(m);
    if let Some(i) = pos.iter().find(|&&i| !m.gamma_is_iso(i)) {
        return Err(Error::unsupported(format!(
            "gamma_v needs gamma to be an isomorphism; it is not at {i}"
        )));
    }
    let idx: Vec<u64> = pos
        .iter()
        .filter_map(|i| match i {
            Index::At(k) => Some(*k),
            Index::Generic => None,
        })
        .collect();
    let nv = m.c.len();
    let neg = -one();
    let parts = Germ::try_tabulate(&idx, |i| -> Result<TPart> {
        let (pa, pb) = (m.a.comp(i), m.b.comp(i));
        let ring = b_ring(i);
        let mut sys = LinSys::new();
        let d = sys.block(nv, pa.ngens(), |l, g| ring.allows(m.c[l] - pa.gens[g]));
        let lam = sys.block(pb.rels.len(), pa.ngens(), |r, g| ring.allows(pb.rels[r] - pa.gens[g]));
        let neg_m = pb.matrix.scale(&neg);
        sys.equation(&[(d, Some(m.gamma.get(i)), None), (lam, Some(&neg_m), None)], m.alpha.get(i));
        let sol = sys
            .solve()
            .ok_or_else(|| Error::defect(format!("alpha does not factor through gamma at {i}")))?;
        Ok(TPart {
            nub: pa.clone(),
            beta: sys.extract(d, &sol.particular),
        })
    })?;
    let base = TObject {
        ring: BaseRing::OF,
        vertex: m.c.clone(),
        parts,
    };
    let nub_signs = Germ::tabulate(&idx, |i| m.a_signs.get(i).clone());
    CObject::new(base, nub_signs, m.c_signs.clone()).map_err(|e| e.context("gamma_v"))
}
