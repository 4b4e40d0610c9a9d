//! The `W`-twisted category `A(C)`.
//!
//! `W` acts on `O_F` by `c ↦ -c`. Every nub generator and vertex vector is chosen as a
//! `W`-eigenvector, so the action is recorded as one sign per generator: on an element
//! of degree `d` the generator `x_g` contributes `ε_g (-1)^{(g - d)/2}`.

mod ra;

pub use ra::{gamma_v, include_k, RaDiagramModule};

use crate::error::{Error, Result};
use crate::euler::QcPresentation;
use crate::exactlin::rat::{int, one, sign_pow};
use crate::exactlin::{HMat, Matrix, Ring};
use crate::germ::{union_indices, Germ};
use crate::model_t::{hom_set, tensor_t, HomSpace, TMap, TObject, TPart};

pub type Signs = Vec<i8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CObject {
    pub base: TObject,
    /// `W`-eigenvalue of each nub generator, per position.
    pub nub_signs: Germ<Signs>,
    pub vertex_signs: Signs,
}

/// `w` applied to a generator-coordinate vector of degree `d`.
pub(crate) fn act(gens: &[i64], signs: &[i8], d: i64, v: &[crate::exactlin::Rat]) -> Vec<crate::exactlin::Rat> {
    v.iter()
        .enumerate()
        .map(|(h, x)| x * int(signs[h] as i64) * sign_pow((gens[h] - d) / 2))
        .collect()
}

/// Whether a matrix of generator images (target × source, degree `t`) commutes with `w`
/// modulo the target relations.
pub(crate) fn is_equivariant(
    target: &QcPresentation,
    target_signs: &[i8],
    source_degrees: &[i64],
    source_signs: &[i8],
    m: &Matrix,
    t: i64,
    ring: Ring,
) -> bool {
    (0..source_degrees.len()).all(|g| {
        let d = source_degrees[g] + t;
        let col = m.col(g);
        let wc = act(&target.gens, target_signs, d, &col);
        let diff: Vec<_> = wc.iter().zip(&col).map(|(a, b)| a - b * int(source_signs[g] as i64)).collect();
        target.is_zero_element(d, ring, &diff)
    })
}

fn check_signs(s: &[i8], n: usize, what: &str) -> Result<()> {
    if s.len() != n {
        return Err(Error::invalid(format!("{what} has {} signs for {n} basis vectors", s.len())));
    }
    if s.iter().any(|&x| x != 1 && x != -1) {
        return Err(Error::invalid(format!("{what} signs must be +1 or -1")));
    }
    Ok(())
}

impl CObject {
    pub fn new(base: TObject, nub_signs: Germ<Signs>, vertex_signs: Signs) -> Result<Self> {
        let idx = union_indices(&[&base.indices(), &nub_signs.indices()]);
        let nub_signs = Germ::tabulate(&idx, |i| nub_signs.get(i).clone());
        let out = CObject {
            base,
            nub_signs,
            vertex_signs,
        };
        out.validate()?;
        Ok(out)
    }

    /// Signs read off from a structure map: each generator takes the sign forced by the first
    /// vertex vector it hits, and `+1` if it is torsion.
    pub fn equivariant(base: TObject, vertex_signs: Signs) -> Result<Self> {
        let nub_signs = base.parts.map(|p| {
            (0..p.nub.ngens())
                .map(|g| {
                    (0..base.vertex.len())
                        .find(|&l| !num_traits::Zero::is_zero(p.beta.get(l, g)))
                        .map_or(1, |l| vertex_signs[l] * parity_sign(base.vertex[l] - p.nub.gens[g]))
                })
                .collect()
        });
        CObject::new(base, nub_signs, vertex_signs)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        let nv = self.base.vertex.len();
        check_signs(&self.vertex_signs, nv, "vertex")?;
        let vfree = QcPresentation::free(self.base.vertex.clone());
        for i in self.base.parts.positions() {
            let p = self.base.part(i);
            let s = self.nub_signs.get(i);
            check_signs(s, p.nub.ngens(), "nub").map_err(|e| e.context(i))?;
            let ring = self.base.nub_ring(i);
            if !relations_stable(&p.nub, s, ring) {
                return Err(Error::invalid("relations are not W-stable").context(i));
            }
            if !is_equivariant(&vfree, &self.vertex_signs, &p.nub.gens, s, &p.beta, 0, TObject::beta_ring(i)) {
                return Err(Error::invalid("structure map is not W-equivariant").context(i));
            }
        }
        Ok(())
    }

    pub fn forget(&self) -> TObject {
        self.base.clone()
    }

    /// `w ∘ f ∘ w` for a map of the underlying objects.
    fn conjugate(source: &CObject, target: &CObject, f: &TMap) -> TMap {
        let t = f.degree;
        let idx = union_indices(&[&source.base.indices(), &target.base.indices(), &f.theta.indices()]);
        let theta = Germ::tabulate(&idx, |i| {
            let th = f.theta.get(i);
            let (sg, tg) = (&source.base.part(i).nub.gens, &target.base.part(i).nub.gens);
            let (ss, ts) = (source.nub_signs.get(i), target.nub_signs.get(i));
            let mut out = th.clone();
            for h in 0..th.rows() {
                for g in 0..th.cols() {
                    let s = int((ss[g] * ts[h]) as i64) * sign_pow((tg[h] - sg[g] - t) / 2);
                    out.set(h, g, th.get(h, g) * s);
                }
            }
            out
        });
        let mut phi = f.phi.clone();
        for l in 0..phi.rows() {
            for m in 0..phi.cols() {
                let s = int((target.vertex_signs[l] * source.vertex_signs[m]) as i64);
                phi.set(l, m, f.phi.get(l, m) * s);
            }
        }
        TMap { degree: t, theta, phi }
    }
}

fn parity_sign(e: i64) -> i8 {
    if (e / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Whether `w` maps every relation into the relation module.
fn relations_stable(p: &QcPresentation, s: &[i8], ring: Ring) -> bool {
    (0..p.rels.len()).all(|j| {
        let col = p.matrix.col(j);
        p.is_zero_element(p.rels[j], ring, &act(&p.gens, s, p.rels[j], &col))
    })
}

/// `W`-fixed maps between objects of `A(C)`.
#[derive(Clone, Debug)]
pub struct CHomSpace {
    pub degree: i64,
    pub basis: Vec<TMap>,
    /// The hom space of the underlying objects.
    pub underlying: HomSpace,
}

impl CHomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn hom_set_c(a: &CObject, b: &CObject, t: i64) -> Result<CHomSpace> {
    let h = hom_set(&a.base, &b.base, t)?;
    let n = h.dim();
    let mut cols = Vec::with_capacity(n);
    for f in &h.basis {
        let wf = CObject::conjugate(a, b, f);
        let x = h
            .coordinates(&wf)
            .ok_or_else(|| Error::defect("conjugate of a map is not a map"))?;
        cols.push(x);
    }
    let w = Matrix::from_cols(n, &cols);
    let fixed = w.sub(&Matrix::identity(n)).kernel();
    let basis = (0..fixed.cols()).map(|j| h.element(&fixed.col(j))).collect();
    Ok(CHomSpace {
        degree: t,
        basis,
        underlying: h,
    })
}

/// Tensor product with the diagonal action.
pub fn tensor_c(a: &CObject, b: &CObject) -> Result<CObject> {
    let base = tensor_t(&a.base, &b.base)?;
    let kron = |x: &Signs, y: &Signs| -> Signs { x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect() };
    let nub_signs = a.nub_signs.zip(&b.nub_signs, kron);
    CObject::new(base, nub_signs, kron(&a.vertex_signs, &b.vertex_signs))
}

/// `S⁰` with `W` acting trivially on the generator.
pub fn s0_c() -> CObject {
    CObject {
        base: crate::model_t::s0(),
        nub_signs: Germ::constant(vec![1]),
        vertex_signs: vec![1],
    }
}

/// `j*A`: the same object with `c` acting by `-c`.
pub fn j_star(a: &TObject) -> TObject {
    TObject {
        ring: a.ring,
        vertex: a.vertex.clone(),
        parts: a.parts.map(|p| TPart {
            nub: p.nub.twist(),
            beta: HMat::new(a.vertex.clone(), p.nub.gens.clone(), p.beta.clone()).twist().m,
        }),
    }
}

/// `[[I, I], [I, -I]]`.
fn swap_basis(n: usize) -> Matrix {
    let i = Matrix::identity(n);
    let top = i.hstack(&i);
    let bottom = i.hstack(&i.scale(&-one()));
    top.vstack(&bottom)
}

/// The left adjoint `𝔻` of the forgetful functor: nub `N ⊕ j*N`, vertex `U ⊕ U`, and `W`
/// swapping the summands. Generators and vertex vectors are the `±` eigen-combinations.
pub fn induce_d(a: &TObject) -> Result<CObject> {
    let half = crate::exactlin::rat::rat(1, 2);
    let q = swap_basis(a.vertex.len());
    let mut vertex = a.vertex.clone();
    vertex.extend(&a.vertex);
    let parts = a.parts.map(|p| {
        let n = p.nub.ngens();
        let tw = p.nub.twist();
        let rels = p.nub.matrix.block_diag(&tw.matrix);
        let pm = swap_basis(n);
        let mut gens = p.nub.gens.clone();
        gens.extend(&p.nub.gens);
        let mut rdeg = p.nub.rels.clone();
        rdeg.extend(&p.nub.rels);
        let b_tw = HMat::new(a.vertex.clone(), p.nub.gens.clone(), p.beta.clone()).twist().m;
        let beta = q.mul(&p.beta.block_diag(&b_tw)).mul(&pm).scale(&half);
        TPart {
            nub: QcPresentation::new(gens, rdeg, pm.mul(&rels)),
            beta,
        }
    });
    let base = TObject {
        ring: a.ring,
        vertex,
        parts,
    };
    let pm_signs = |n: usize| -> Signs { std::iter::repeat(1).take(n).chain(std::iter::repeat(-1).take(n)).collect() };
    let nub_signs = a.parts.map(|p| pm_signs(p.nub.ngens()));
    CObject::new(base, nub_signs, pm_signs(a.vertex.len())).map_err(|e| e.context("induction"))
}

/// The unit `A -> i*𝔻A`, `x ↦ (x + x')` in eigen-coordinates, i.e. `x ↦ (p + m)/2`.
pub fn induction_unit(a: &TObject) -> TMap {
    let half = crate::exactlin::rat::rat(1, 2);
    let col = |n: usize| Matrix::identity(n).vstack(&Matrix::identity(n)).scale(&half);
    TMap {
        degree: 0,
        theta: a.parts.map(|p| col(p.nub.ngens())),
        phi: col(a.vertex.len()),
    }
}
