//! The ring `O_F = ∏_k Q[c_k]`, Euler classes, the localization `E⁻¹O_F`, and finitely
//! presented graded modules over both.
//!
//! A module is stored as a germ of presentations over `Q[c]`: one per exceptional
//! component and one shared by every other component. Over `E⁻¹O_F` the exceptional
//! components are read over `Q[c, c^-1]`, while the generic component keeps its `Q[c]`
//! lattice: an element of `E⁻¹O_F` may only invert `c_k` for finitely many `k`.

pub mod qc;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::rat::fmt_rat;
use crate::exactlin::{Matrix, Rat, Ring};
use crate::germ::{union_indices, Germ, Index, IndexSet};

pub use qc::{is_well_defined, map_hmat, Decomposition, QcPresentation};

/// `c^v` for a finitely supported exponent function `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerClass(pub BTreeMap<u64, u64>);

impl EulerClass {
    pub fn zero() -> Self {
        EulerClass(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        let mut m = BTreeMap::new();
        for &(k, e) in pairs {
            assert!(k >= 1, "Euler classes are indexed by k >= 1");
            if e > 0 {
                *m.entry(k).or_insert(0) += e;
            }
        }
        EulerClass(m)
    }

    pub fn exponent(&self, k: u64) -> u64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    /// Exponent at a germ position; the generic exponent is always zero.
    pub fn exponent_at(&self, i: Index) -> u64 {
        match i {
            Index::At(k) => self.exponent(k),
            Index::Generic => 0,
        }
    }

    pub fn support(&self) -> Vec<u64> {
        self.0.keys().copied().collect()
    }

    pub fn scale(&self, n: u64) -> Self {
        EulerClass(self.0.iter().filter(|_| n > 0).map(|(&k, &e)| (k, e * n)).collect())
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &EulerClass) -> Self {
        let mut out = self.0.clone();
        for (&k, &e) in &other.0 {
            let cur = out.entry(k).or_insert(0);
            *cur = (*cur).max(e);
        }
        EulerClass(out)
    }
}

pub fn euler_mul(a: &EulerClass, b: &EulerClass) -> EulerClass {
    let mut out = a.0.clone();
    for (&k, &e) in &b.0 {
        *out.entry(k).or_insert(0) += e;
    }
    EulerClass(out)
}

impl fmt::Display for EulerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, e)| format!("{k}: {e}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `⊕_j z^{n_j}` with every `n_j >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibleRep {
    pub chars: Vec<u64>,
}

impl AdmissibleRep {
    pub fn new(chars: Vec<u64>) -> Result<Self> {
        if chars.contains(&0) {
            return Err(Error::invalid("an admissible representation has no trivial characters"));
        }
        Ok(AdmissibleRep { chars })
    }

    pub fn direct_sum(&self, other: &AdmissibleRep) -> AdmissibleRep {
        let mut chars = self.chars.clone();
        chars.extend(&other.chars);
        AdmissibleRep { chars }
    }
}

/// `v(k) = #{j : k | n_j}`, the complex dimension of `V^{C_k}`.
pub fn dimension_function(v: &AdmissibleRep) -> EulerClass {
    let mut m = BTreeMap::new();
    for &n in &v.chars {
        for k in crate::burnside::divisors(n) {
            *m.entry(k).or_insert(0) += 1;
        }
    }
    EulerClass(m)
}

/// Which ring a module lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseRing {
    #[serde(rename = "O_F")]
    OF,
    #[serde(rename = "E^-1 O_F")]
    Localized,
}

impl BaseRing {
    /// The ring used for degreewise linear algebra at a germ position.
    pub fn at(self, i: Index) -> Ring {
        match (self, i) {
            (BaseRing::Localized, Index::At(_)) => Ring::Laurent,
            _ => Ring::Poly,
        }
    }
}

/// A homogeneous-by-pieces element of `O_F` or `E⁻¹O_F`: the coefficient at `k` of the
/// degree `2n` piece multiplies `c_k^{-n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OFElement {
    pub pieces: BTreeMap<i64, Germ<Rat>>,
}

impl OFElement {
    pub fn zero() -> Self {
        OFElement::default()
    }

    pub fn one() -> Self {
        Self::homogeneous(0, Germ::constant(crate::exactlin::rat::one()))
    }

    pub fn homogeneous(degree: i64, coeffs: Germ<Rat>) -> Self {
        let mut pieces = BTreeMap::new();
        if !(coeffs.is_constant() && coeffs.generic().is_zero()) {
            pieces.insert(degree, coeffs);
        }
        OFElement { pieces }
    }

    pub fn check(&self, ring: BaseRing) -> Result<()> {
        for (&d, g) in &self.pieces {
            if d % 2 != 0 {
                return Err(Error::invalid(format!("odd degree {d} in a ring concentrated in even degrees")));
            }
            match ring {
                BaseRing::OF if d > 0 => {
                    return Err(Error::invalid(format!("O_F has nothing in positive degree {d}")));
                }
                BaseRing::Localized if d > 0 && !g.generic().is_zero() => {
                    return Err(Error::invalid(format!(
                        "degree {d} of E^-1 O_F is a direct sum: the generic coefficient must vanish"
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &OFElement) -> OFElement {
        let mut pieces = self.pieces.clone();
        for (&d, g) in &other.pieces {
            let sum = match pieces.get(&d) {
                Some(h) => h.zip(g, |a, b| a + b),
                None => g.clone(),
            };
            if sum.is_constant() && sum.generic().is_zero() {
                pieces.remove(&d);
            } else {
                pieces.insert(d, sum);
            }
        }
        OFElement { pieces }
    }

    pub fn mul(&self, other: &OFElement) -> OFElement {
        let mut out = OFElement::zero();
        for (&d, g) in &self.pieces {
            for (&e, h) in &other.pieces {
                out = out.add(&OFElement::homogeneous(d + e, g.zip(h, |a, b| a * b)));
            }
        }
        out
    }

    pub fn degree(&self) -> Option<i64> {
        match self.pieces.len() {
            1 => self.pieces.keys().next().copied(),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Coefficient of the degree `d` piece at a position.
    pub fn coeff(&self, d: i64, i: Index) -> Rat {
        self.pieces.get(&d).map_or_else(Rat::zero, |g| g.get(i).clone())
    }

    pub fn indices(&self) -> Vec<u64> {
        let lists: Vec<Vec<u64>> = self.pieces.values().map(|g| g.indices()).collect();
        let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
        union_indices(&refs)
    }
}

impl fmt::Display for OFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, g) in &self.pieces {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let exc: Vec<String> = g.exceptional().iter().map(|(k, v)| format!("{k}: {}", fmt_rat(v))).collect();
            write!(f, "[deg {d}: {{{}}}, generic {}]", exc.join(", "), fmt_rat(g.generic()))?;
        }
        Ok(())
    }
}

/// A finitely presented graded module over `O_F` or `E⁻¹O_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpModule {
    pub ring: BaseRing,
    pub comps: Germ<QcPresentation>,
}

/// A homogeneous element: coordinates on each component's generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub degree: i64,
    pub coords: Germ<Vec<Rat>>,
}

impl ModuleElement {
    pub fn zero(m: &FpModule, degree: i64) -> Self {
        ModuleElement {
            degree,
            coords: m.comps.map(|p| vec![Rat::zero(); p.ngens()]),
        }
    }
}

impl FpModule {
    pub fn new(ring: BaseRing, comps: Germ<QcPresentation>) -> Result<Self> {
        let m = FpModule { ring, comps };
        m.check()?;
        Ok(m)
    }

    pub fn zero(ring: BaseRing) -> Self {
        FpModule {
            ring,
            comps: Germ::constant(QcPresentation::zero()),
        }
    }

    /// Free module on generators with the given degree germs.
    pub fn free(ring: BaseRing, gens: &[Germ<i64>]) -> Self {
        let lists: Vec<Vec<u64>> = gens.iter().map(|g| g.indices()).collect();
        let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
        let idx = union_indices(&refs);
        FpModule {
            ring,
            comps: Germ::tabulate(&idx, |i| QcPresentation::free(gens.iter().map(|g| *g.get(i)).collect())),
        }
    }

    /// `O_F` itself.
    pub fn of() -> Self {
        Self::free(BaseRing::OF, &[Germ::constant(0)])
    }

    pub fn check(&self) -> Result<()> {
        for i in self.comps.positions() {
            self.comps.get(i).check(self.ring.at(i)).map_err(|e| e.context(i))?;
        }
        Ok(())
    }

    pub fn comp(&self, i: Index) -> &QcPresentation {
        self.comps.get(i)
    }

    pub fn ring_at(&self, i: Index) -> Ring {
        self.ring.at(i)
    }

    pub fn indices(&self) -> Vec<u64> {
        self.comps.indices()
    }

    /// Dimension of the degree `d` part of the component at `i`.
    pub fn dim(&self, i: Index, d: i64) -> usize {
        self.comps.get(i).dim(d, self.ring.at(i))
    }

    /// Lowest and highest degree appearing in any component's presentation.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut out: Option<(i64, i64)> = None;
        for i in self.comps.positions() {
            if let Some((lo, hi)) = self.comps.get(i).degree_range() {
                out = Some(match out {
                    None => (lo, hi),
                    Some((a, b)) => (a.min(lo), b.max(hi)),
                });
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        same_ring(self, other)?;
        Ok(FpModule {
            ring: self.ring,
            comps: self.comps.zip(&other.comps, |a, b| a.direct_sum(b)),
        })
    }

    pub fn shift(&self, s: i64) -> FpModule {
        FpModule {
            ring: self.ring,
            comps: self.comps.map(|p| p.shift(s)),
        }
    }

    pub fn tensor(&self, other: &FpModule) -> Result<FpModule> {
        same_ring(self, other)?;
        Ok(FpModule {
            ring: self.ring,
            comps: self.comps.zip(&other.comps, |a, b| a.tensor(b)),
        })
    }

    /// Whether every element is killed by some Euler class.
    pub fn is_euler_torsion(&self) -> Result<bool> {
        for i in self.comps.positions() {
            let p = self.comps.get(i);
            let ok = match i {
                Index::At(_) => p.free_degrees(Ring::Poly)?.is_empty(),
                // a nonzero generic part is nonzero at infinitely many components
                Index::Generic => p.free_degrees(Ring::Poly)?.is_empty() && p.torsion_summands(Ring::Poly)?.is_empty(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> Result<bool> {
        for i in self.comps.positions() {
            let p = self.comps.get(i);
            let r = self.ring.at(i);
            if !p.free_degrees(r)?.is_empty() || !p.torsion_summands(r)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Uniform form: one generator list with degree germs, relations with germ entries.
    pub fn to_uniform(&self) -> UniformModule {
        let positions = self.comps.positions();
        let g_max = positions.iter().map(|&i| self.comps.get(i).ngens()).max().unwrap_or(0);
        let r_max = positions
            .iter()
            .map(|&i| {
                let p = self.comps.get(i);
                p.rels.len() + (g_max - p.ngens())
            })
            .max()
            .unwrap_or(0);
        let padded = self.comps.map(|p| {
            let mut gens = p.gens.clone();
            let mut rels = p.rels.clone();
            let pad = g_max - p.ngens();
            gens.extend(std::iter::repeat(0).take(pad));
            let mut matrix = Matrix::zeros(g_max, r_max);
            matrix.paste(0, 0, &p.matrix);
            for t in 0..pad {
                rels.push(0);
                matrix.set(p.ngens() + t, p.rels.len() + t, crate::exactlin::rat::one());
            }
            rels.extend(std::iter::repeat(0).take(r_max - rels.len()));
            QcPresentation::new(gens, rels, matrix)
        });
        let idx = self.comps.indices();
        UniformModule {
            ring: self.ring,
            generators: (0..g_max).map(|a| Germ::tabulate(&idx, |i| padded.get(i).gens[a])).collect(),
            relation_degrees: (0..r_max).map(|b| Germ::tabulate(&idx, |i| padded.get(i).rels[b])).collect(),
            relations: (0..g_max)
                .map(|a| {
                    (0..r_max)
                        .map(|b| Germ::tabulate(&idx, |i| padded.get(i).matrix.get(a, b).clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

fn same_ring(a: &FpModule, b: &FpModule) -> Result<()> {
    if a.ring != b.ring {
        return Err(Error::invalid(format!("modules over different rings ({:?} and {:?})", a.ring, b.ring)));
    }
    Ok(())
}

/// A module with a single generator list shared by every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformModule {
    pub ring: BaseRing,
    pub generators: Vec<Germ<i64>>,
    pub relation_degrees: Vec<Germ<i64>>,
    /// `relations[i][j]`: coefficient of generator `i` in relation `j`.
    pub relations: Vec<Vec<Germ<Rat>>>,
}

impl UniformModule {
    pub fn to_module(&self) -> Result<FpModule> {
        let g = self.generators.len();
        let r = self.relation_degrees.len();
        if self.relations.len() != g || self.relations.iter().any(|row| row.len() != r) {
            return Err(Error::parse(format!("relation matrix must be {g} x {r}")));
        }
        let mut lists: Vec<Vec<u64>> = Vec::new();
        lists.extend(self.generators.iter().map(|x| x.indices()));
        lists.extend(self.relation_degrees.iter().map(|x| x.indices()));
        lists.extend(self.relations.iter().flatten().map(|x| x.indices()));
        let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
        let idx = union_indices(&refs);
        let comps = Germ::tabulate(&idx, |i| {
            let mut m = Matrix::zeros(g, r);
            for a in 0..g {
                for b in 0..r {
                    m.set(a, b, self.relations[a][b].get(i).clone());
                }
            }
            QcPresentation::new(
                self.generators.iter().map(|x| *x.get(i)).collect(),
                self.relation_degrees.iter().map(|x| *x.get(i)).collect(),
                m,
            )
        });
        FpModule::new(self.ring, comps)
    }
}

/// `Σ^{±V} M`: the component at `k` moves by `±2 dim_C V^{C_k}`.
pub fn sigma(m: &FpModule, v: &AdmissibleRep, positive: bool) -> FpModule {
    let e = dimension_function(v);
    let sign = if positive { 1 } else { -1 };
    let idx = union_indices(&[&m.indices(), &e.support()]);
    FpModule {
        ring: m.ring,
        comps: Germ::tabulate(&idx, |i| m.comps.get(i).shift(sign * 2 * e.exponent_at(i) as i64)),
    }
}

/// `E⁻¹M`, each component brought into cyclic normal form.
pub fn localize(m: &FpModule) -> Result<FpModule> {
    let comps = m.comps.try_map(|i, p| {
        let r = BaseRing::Localized.at(i);
        Ok::<_, Error>(p.simplify(r)?.0)
    })?;
    Ok(FpModule {
        ring: BaseRing::Localized,
        comps,
    })
}

/// `O_F(V) = {x : c^V x ∈ O_F}`, free on `c^{-V}`.
pub fn rep_sphere_module(v: &AdmissibleRep) -> FpModule {
    let e = dimension_function(v);
    let deg = Germ::new(e.0.iter().map(|(&k, &n)| (k, 2 * n as i64)).collect(), 0);
    FpModule::free(BaseRing::OF, &[deg])
}

/// The witness for [`is_fg_projective`]: degrees of the free summands per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityWitness {
    pub projective: bool,
    pub free_degrees: Germ<Vec<i64>>,
    /// First component carrying torsion, with its summands `(degree, order)`.
    pub obstruction: Option<(Index, Vec<(i64, i64)>)>,
}

pub fn is_fg_projective(m: &FpModule) -> Result<ProjectivityWitness> {
    let mut obstruction = None;
    for i in m.comps.positions() {
        let t = m.comps.get(i).torsion_summands(Ring::Poly)?;
        if !t.is_empty() && obstruction.is_none() {
            obstruction = Some((i, t));
        }
    }
    let free_degrees = m.comps.try_map(|_, p| p.free_degrees(Ring::Poly))?;
    Ok(ProjectivityWitness {
        projective: obstruction.is_none(),
        free_degrees,
        obstruction,
    })
}

/// Keeps the components indexed by `phi` and zeroes the rest.
pub fn e_phi(m: &FpModule, phi: &IndexSet) -> FpModule {
    let idx = union_indices(&[&m.indices(), &phi.listed()]);
    FpModule {
        ring: m.ring,
        comps: Germ::tabulate(&idx, |i| {
            if phi.contains_index(i) {
                m.comps.get(i).clone()
            } else {
                QcPresentation::zero()
            }
        }),
    }
}
