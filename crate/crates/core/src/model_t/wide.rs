//! Wide spheres and the covering construction.
//!
//! A wide sphere has vertex `U` with basis `u_1, ..., u_d` and nub generated inside
//! `E⁻¹O_F ⊗ U` by `x_i = c^{a_i} u_i` and `w = Σ σ_i u_i`. Over each `Q[c_k]` the only
//! syzygy is `c^m w = Σ σ_i c^{m - a_i} x_i` with `m` the least exponent making every
//! coefficient polynomial, so the presentation has one relation per component.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::{is_fg_projective, EulerClass, ModuleElement, OFElement, QcPresentation};
use crate::exactlin::rat::{one, zero};
use crate::exactlin::{Matrix, Rat, Ring};
use crate::germ::{union_indices, Germ, Index};

use super::{TMap, TObject, TPart};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideSphereData {
    /// Degrees of `u_1, ..., u_d`.
    pub u_degrees: Vec<i64>,
    pub a: Vec<EulerClass>,
    /// Homogeneous elements of `E⁻¹O_F` (or zero).
    pub sigma: Vec<OFElement>,
}

impl WideSphereData {
    /// Degree of `w`; zero when every `σ_i` vanishes.
    pub fn w_degree(&self) -> Result<i64> {
        let mut out: Option<i64> = None;
        for (i, s) in self.sigma.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let d = s
                .degree()
                .ok_or_else(|| Error::invalid(format!("sigma_{} is not homogeneous", i + 1)))?;
            let total = self.u_degrees[i] + d;
            match out {
                Some(o) if o != total => {
                    return Err(Error::invalid(format!(
                        "sigma_{} ⊗ u_{} has degree {total}, expected {o}",
                        i + 1,
                        i + 1
                    )))
                }
                _ => out = Some(total),
            }
        }
        Ok(out.unwrap_or(0))
    }

    /// No generators and no extra element: the resulting object is zero.
    pub fn is_degenerate(&self) -> bool {
        self.u_degrees.is_empty()
    }

    fn indices(&self) -> Vec<u64> {
        let mut lists: Vec<Vec<u64>> = self.a.iter().map(|e| e.support()).collect();
        lists.extend(self.sigma.iter().map(|s| s.indices()));
        let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
        union_indices(&refs)
    }
}

pub fn wide_sphere(data: &WideSphereData) -> Result<TObject> {
    let d = data.u_degrees.len();
    if data.a.len() != d || data.sigma.len() != d {
        return Err(Error::invalid(format!(
            "wide sphere needs {d} Euler classes and {d} coefficients, got {} and {}",
            data.a.len(),
            data.sigma.len()
        )));
    }
    for s in &data.sigma {
        s.check(crate::euler::BaseRing::Localized)?;
    }
    let big_d = data.w_degree()?;
    let idx = data.indices();
    let parts = Germ::tabulate(&idx, |i| {
        let mut gens: Vec<i64> = (0..d)
            .map(|j| data.u_degrees[j] - 2 * data.a[j].exponent_at(i) as i64)
            .collect();
        gens.push(big_d);
        let mut m = 0i64;
        let mut s_vals = Vec::with_capacity(d);
        for j in 0..d {
            let dj = big_d - data.u_degrees[j];
            let s = data.sigma[j].coeff(dj, i);
            if !s.is_zero() {
                // σ_j = s c^{e_j}, e_j = -dj/2
                m = m.max(data.a[j].exponent_at(i) as i64 + dj / 2);
            }
            s_vals.push(s);
        }
        let mut rel = Matrix::zeros(d + 1, 1);
        rel.set(d, 0, one());
        let mut beta = Matrix::zeros(d, d + 1);
        for j in 0..d {
            rel.set(j, 0, -s_vals[j].clone());
            beta.set(j, j, one());
            beta.set(j, d, s_vals[j].clone());
        }
        TPart {
            nub: QcPresentation::new(gens, vec![big_d - 2 * m], rel),
            beta,
        }
    });
    let out = TObject {
        ring: crate::euler::BaseRing::OF,
        vertex: data.u_degrees.clone(),
        parts,
    };
    out.validate().map_err(|e| e.context("wide sphere"))?;
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub data: WideSphereData,
    pub sphere: TObject,
    /// `W -> A`; the extra generator `w` (last) maps to the chosen element.
    pub map: TMap,
    /// Uniform exponent used at each component.
    pub exponents: Germ<u64>,
    /// Components where the element is Euler torsion and an extra vertex vector was needed.
    pub augmented: Vec<u64>,
}

const SEARCH_LIMIT: u64 = 256;

/// A wide sphere mapping onto a chosen element of the nub.
pub fn cover(a: &TObject, n: &ModuleElement) -> Result<CoverResult> {
    let idx = union_indices(&[&a.indices(), &n.coords.indices()]);
    let positions: Vec<Index> = idx.iter().map(|&k| Index::At(k)).chain([Index::Generic]).collect();
    let big_d = n.degree;
    let nv = a.vertex.len();
    struct Local {
        b: Vec<u64>,
        p: Vec<Vec<Rat>>,
        s: Vec<Rat>,
        torsion: bool,
    }
    let mut local = Vec::new();
    for &i in &positions {
        let part = a.part(i);
        let ring = a.nub_ring(i);
        let x = n.coords.get(i);
        if x.len() != part.nub.ngens() {
            return Err(Error::invalid(format!("element has {} coordinates at {i}, nub has {} generators", x.len(), part.nub.ngens())));
        }
        part.nub.restrict_to_degree(big_d, ring, x).map_err(|e| e.context(i))?;
        let s = part.beta.apply(x);
        let torsion = s.iter().all(|v| v.is_zero()) && !part.nub.is_zero_element(big_d, ring, x);
        let mut b = Vec::new();
        let mut p = Vec::new();
        for l in 0..nv {
            let (bl, pl) = preimage(a, i, l)?;
            b.push(bl);
            p.push(pl);
        }
        local.push(Local { b, p, s, torsion });
    }
    let augmented: Vec<u64> = positions
        .iter()
        .zip(&local)
        .filter_map(|(i, loc)| match i {
            Index::At(k) if loc.torsion => Some(*k),
            _ => None,
        })
        .collect();
    if local.last().is_some_and(|l| l.torsion) {
        return Err(Error::defect("generic component carries Euler torsion in a valid object"));
    }
    let aug = !augmented.is_empty();
    let mut exps = Vec::new();
    for (&i, loc) in positions.iter().zip(&local) {
        let ring = a.nub_ring(i);
        let part = a.part(i);
        let x = n.coords.get(i);
        // n - Σ s_l p_l in generator coordinates; c-powers are implied by degree
        let mut r = x.clone();
        for l in 0..nv {
            if loc.s[l].is_zero() {
                continue;
            }
            for (g, v) in loc.p[l].iter().enumerate() {
                r[g] -= &loc.s[l] * v;
            }
        }
        let mut big_b = loc.b.iter().copied().max().unwrap_or(0);
        if i == Index::Generic && big_b != 0 {
            return Err(Error::defect("generic structure map is not a lattice isomorphism"));
        }
        loop {
            let mut m = 0i64;
            for l in 0..nv {
                if !loc.s[l].is_zero() {
                    m = m.max(big_b as i64 - (a.vertex[l] - big_d) / 2);
                }
            }
            if loc.torsion {
                m = m.max(big_b as i64);
            }
            if part.nub.is_zero_element(big_d - 2 * m, ring, &r) {
                break;
            }
            if i == Index::Generic {
                return Err(Error::defect("generic cover relation does not hold"));
            }
            big_b += 1;
            if big_b > SEARCH_LIMIT {
                return Err(Error::defect(format!("no Euler class makes the cover well defined at {i}")));
            }
        }
        exps.push(big_b);
    }
    let exponents = Germ::tabulate(&idx, |i| exps[positions.iter().position(|&q| q == i).unwrap()]);
    let a_class = EulerClass(exponents.exceptional().iter().filter(|(_, &e)| e > 0).map(|(&k, &e)| (k, e)).collect());
    let mut u_degrees = a.vertex.clone();
    let mut a_list = vec![a_class.clone(); nv];
    let mut sigma: Vec<OFElement> = (0..nv)
        .map(|l| {
            let coeffs = Germ::tabulate(&idx, |i| local[positions.iter().position(|&q| q == i).unwrap()].s[l].clone());
            OFElement::homogeneous(big_d - a.vertex[l], coeffs)
        })
        .collect();
    if aug {
        u_degrees.push(big_d);
        a_list.push(a_class);
        let coeffs = Germ::new(augmented.iter().map(|&k| (k, one())).collect(), zero());
        sigma.push(OFElement::homogeneous(0, coeffs));
    }
    let data = WideSphereData {
        u_degrees,
        a: a_list,
        sigma,
    };
    let sphere = wide_sphere(&data)?;
    let nw = data.u_degrees.len();
    let theta = Germ::tabulate(&union_indices(&[&idx, &sphere.indices()]), |i| {
        let q = positions.iter().position(|&q| q == i).unwrap_or(positions.len() - 1);
        let loc = &local[q];
        let ng = a.part(i).nub.ngens();
        let mut cols: Vec<Vec<Rat>> = loc.p.clone();
        if aug {
            cols.push(vec![zero(); ng]);
        }
        cols.push(n.coords.get(i).clone());
        debug_assert_eq!(cols.len(), nw + 1);
        Matrix::from_cols(ng, &cols)
    });
    let mut phi = Matrix::zeros(nv, nw);
    for l in 0..nv {
        phi.set(l, l, one());
    }
    let map = TMap { degree: 0, theta, phi };
    map.validate(&sphere, a).map_err(|e| Error::defect(format!("cover map is invalid: {e}")))?;
    if !is_fg_projective(&sphere.nub())?.projective {
        return Err(Error::defect("wide sphere nub is not projective"));
    }
    Ok(CoverResult {
        data,
        sphere,
        map,
        exponents,
        augmented,
    })
}

/// Least `b >= 0` and `p` with `β(p) = c^b u_l`, as generator coordinates.
fn preimage(a: &TObject, i: Index, l: usize) -> Result<(u64, Vec<Rat>)> {
    let part = a.part(i);
    let ring = a.nub_ring(i);
    let lowest = part.nub.gens.iter().copied().min().unwrap_or(a.vertex[l]);
    let rows: Vec<usize> = (0..a.vertex.len()).filter(|&r| Ring::Laurent.allows(a.vertex[r] - a.vertex[l])).collect();
    let target: Vec<Rat> = rows.iter().map(|&r| if r == l { one() } else { zero() }).collect();
    let mut b = 0u64;
    loop {
        let d = a.vertex[l] - 2 * b as i64;
        let f = part.nub.f_idx(d, ring);
        let sub = part.beta.select(&rows, &f);
        if let Some(x) = sub.solve(&target) {
            let mut p = vec![zero(); part.nub.ngens()];
            for (j, &g) in f.iter().enumerate() {
                p[g] = x[j].clone();
            }
            return Ok((b, p));
        }
        if d < lowest - 2 {
            return Err(Error::defect(format!("vertex vector {l} has no preimage at {i}")));
        }
        b += 1;
    }
}
