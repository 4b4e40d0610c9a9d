//! The rational Burnside ring of O(2) as locally constant functions on its space of
//! closed subgroups with finite Weyl group: the point `SO(2)` together with the dihedral
//! classes `D_{2k}`, which converge to `O(2)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::rat::{fmt_rat, Rat};
use crate::germ::Germ;

/// A locally constant function: its value at `SO(2)`, and the germ of its values at `D_{2k}`.
/// The generic value is the value at `O(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    pub so2: Rat,
    pub dihedral: Germ<Rat>,
}

impl BurnsideElement {
    pub fn new(so2: Rat, dihedral: Germ<Rat>) -> Self {
        BurnsideElement { so2, dihedral }
    }

    pub fn constant(q: Rat) -> Self {
        BurnsideElement::new(q.clone(), Germ::constant(q))
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        BurnsideElement::new(&self.so2 + &other.so2, self.dihedral.zip(&other.dihedral, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        BurnsideElement::new(&self.so2 - &other.so2, self.dihedral.zip(&other.dihedral, |a, b| a - b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        BurnsideElement::new(&self.so2 * &other.so2, self.dihedral.zip(&other.dihedral, |a, b| a * b))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        BurnsideElement::new(&self.so2 * q, self.dihedral.map(|a| a * q))
    }

    /// Value at `O(2)`.
    pub fn at_o2(&self) -> &Rat {
        self.dihedral.generic()
    }

    pub fn at_dihedral(&self, k: u64) -> &Rat {
        self.dihedral.at(k)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{so2: {}, dihedral: {{", fmt_rat(&self.so2))?;
        let mut first = true;
        for (k, v) in self.dihedral.exceptional() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{k}: {}", fmt_rat(v))?;
        }
        write!(f, "}}, generic: {}}}", fmt_rat(self.dihedral.generic()))
    }
}

/// The characteristic function of `SO(2)`.
pub fn e_c() -> BurnsideElement {
    BurnsideElement::new(Rat::one(), Germ::constant(Rat::zero()))
}

/// `1 - e_C`, the characteristic function of the dihedral part.
pub fn e_d() -> BurnsideElement {
    BurnsideElement::one().sub(&e_c())
}

/// The characteristic function of `D_{2n}`.
pub fn e_n(n: u64) -> Result<BurnsideElement> {
    check_n(n)?;
    Ok(BurnsideElement::new(Rat::zero(), Germ::single(n, Rat::one(), Rat::zero())))
}

/// `e_D - Σ_{k<n} e_k`: the characteristic function of `{D_{2k} : k >= n} ∪ {O(2)}`.
pub fn f_n(n: u64) -> Result<BurnsideElement> {
    check_n(n)?;
    let mut out = e_d();
    for k in 1..n {
        out = out.sub(&e_n(k)?);
    }
    Ok(out)
}

fn check_n(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::invalid("idempotent index must be at least 1"));
    }
    Ok(())
}

/// The two halves of the Hasse square: the dihedral values, and the corner `(f(SO(2)), f(O(2)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseParts {
    pub germ: Germ<Rat>,
    pub corner: (Rat, Rat),
}

pub fn hasse_decompose(f: &BurnsideElement) -> HasseParts {
    HasseParts {
        germ: f.dihedral.clone(),
        corner: (f.so2.clone(), f.at_o2().clone()),
    }
}

/// Inverse of [`hasse_decompose`]; fails unless the germ's limit matches the `O(2)` corner value.
pub fn hasse_assemble(parts: &HasseParts) -> Result<BurnsideElement> {
    if parts.germ.generic() != &parts.corner.1 {
        return Err(Error::invalid(format!(
            "limit of the dihedral values is {} but the O(2) value is {}",
            fmt_rat(parts.germ.generic()),
            fmt_rat(&parts.corner.1)
        )));
    }
    Ok(BurnsideElement::new(parts.corner.0.clone(), parts.germ.clone()))
}

/// An element of `A(D_{2n}) ⊗ Q` in the basis of primitive idempotents `e_{C_k}`, `e_{D_{2k}}`, `k | n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DihedralBurnside {
    pub n: u64,
    pub cyclic: BTreeMap<u64, Rat>,
    pub dihedral: BTreeMap<u64, Rat>,
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

impl DihedralBurnside {
    pub fn zero(n: u64) -> Self {
        let z: BTreeMap<u64, Rat> = divisors(n).into_iter().map(|k| (k, Rat::zero())).collect();
        DihedralBurnside {
            n,
            cyclic: z.clone(),
            dihedral: z,
        }
    }

    pub fn one(n: u64) -> Self {
        let o: BTreeMap<u64, Rat> = divisors(n).into_iter().map(|k| (k, Rat::one())).collect();
        DihedralBurnside {
            n,
            cyclic: o.clone(),
            dihedral: o,
        }
    }

    /// All `2 d(n)` primitive idempotents, cyclic ones first.
    pub fn idempotents(n: u64) -> Vec<DihedralBurnside> {
        let mut out = Vec::new();
        for k in divisors(n) {
            let mut e = Self::zero(n);
            e.cyclic.insert(k, Rat::one());
            out.push(e);
        }
        for k in divisors(n) {
            let mut e = Self::zero(n);
            e.dihedral.insert(k, Rat::one());
            out.push(e);
        }
        out
    }

    fn combine(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        assert_eq!(self.n, other.n, "elements of different Burnside rings");
        DihedralBurnside {
            n: self.n,
            cyclic: self.cyclic.iter().map(|(k, v)| (*k, f(v, &other.cyclic[k]))).collect(),
            dihedral: self.dihedral.iter().map(|(k, v)| (*k, f(v, &other.dihedral[k]))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.cyclic.values().chain(self.dihedral.values()).all(|v| v.is_zero())
    }
}

impl fmt::Display for DihedralBurnside {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let named = self
            .cyclic
            .iter()
            .map(|(k, v)| (format!("e_C{k}"), v))
            .chain(self.dihedral.iter().map(|(k, v)| (format!("e_D{}", 2 * k), v)));
        for (name, v) in named {
            if v.is_zero() {
                continue;
            }
            if v.is_one() {
                terms.push(name);
            } else {
                terms.push(format!("{}*{name}", fmt_rat(v)));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Restriction along `D_{2n} -> O(2)`: `e_C ↦ Σ e_{C_k}`, `e_D ↦ Σ e_{D_{2k}}`,
/// `e_k ↦ e_{D_{2k}}` if `k | n` and `0` otherwise.
pub fn restrict(f: &BurnsideElement, n: u64) -> Result<DihedralBurnside> {
    check_n(n)?;
    let mut out = DihedralBurnside::zero(n);
    for k in divisors(n) {
        out.cyclic.insert(k, f.so2.clone());
        out.dihedral.insert(k, f.at_dihedral(k).clone());
    }
    Ok(out)
}

/// Parses the names `0`, `1`, `e_C`, `e_D`, `e_<n>`, `f_<n>`.
pub fn named(name: &str) -> Result<BurnsideElement> {
    let index = |s: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| Error::parse(format!("bad idempotent index in {name:?}")))
    };
    match name {
        "0" => Ok(BurnsideElement::zero()),
        "1" => Ok(BurnsideElement::one()),
        "e_C" => Ok(e_c()),
        "e_D" => Ok(e_d()),
        _ => {
            if let Some(rest) = name.strip_prefix("e_") {
                e_n(index(rest)?)
            } else if let Some(rest) = name.strip_prefix("f_") {
                f_n(index(rest)?)
            } else {
                Err(Error::parse(format!("unknown Burnside element {name:?}")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::int;

    #[test]
    fn idempotent_relations() {
        assert!(e_c().is_idempotent());
        assert!(e_d().is_idempotent());
        assert_eq!(e_c().mul(&e_d()), BurnsideElement::zero());
        assert_eq!(e_c().add(&e_d()), BurnsideElement::one());
        assert_eq!(e_n(2).unwrap().mul(&e_n(3).unwrap()), BurnsideElement::zero());
        assert_eq!(f_n(1).unwrap(), e_d());
        let e2 = e_n(2).unwrap();
        assert_eq!(e2.so2, int(0));
        assert_eq!(e2.dihedral.indices(), vec![2]);
        assert!(e_n(0).is_err());
    }

    #[test]
    fn e_n_against_f_m() {
        for n in 1..8 {
            for m in 1..8 {
                let prod = e_n(n).unwrap().mul(&f_n(m).unwrap());
                let want = if n >= m { e_n(n).unwrap() } else { BurnsideElement::zero() };
                assert_eq!(prod, want, "e_{n} f_{m}");
            }
        }
    }

    #[test]
    fn hasse_examples() {
        let h = hasse_decompose(&e_c());
        assert!(h.germ.is_constant() && h.germ.generic().is_zero());
        assert_eq!(h.corner, (int(1), int(0)));
        let h = hasse_decompose(&BurnsideElement::one());
        assert_eq!(h.corner, (int(1), int(1)));
        let h = hasse_decompose(&e_n(3).unwrap());
        assert_eq!(h.germ.indices(), vec![3]);
        assert_eq!(h.corner, (int(0), int(0)));
        let bad = HasseParts {
            germ: Germ::constant(int(1)),
            corner: (int(0), int(0)),
        };
        assert!(hasse_assemble(&bad).is_err());
    }

    #[test]
    fn restriction_table() {
        let r = restrict(&e_n(1).unwrap(), 2).unwrap();
        assert_eq!(r.to_string(), "e_D2");
        assert!(restrict(&e_n(3).unwrap(), 2).unwrap().is_zero());
        let r = restrict(&e_c(), 6).unwrap();
        assert_eq!(r.to_string(), "e_C1 + e_C2 + e_C3 + e_C6");
        let r = restrict(&e_d(), 4).unwrap();
        assert_eq!(r.to_string(), "e_D2 + e_D4 + e_D8");
    }
}
