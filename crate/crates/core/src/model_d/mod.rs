//! The dihedral model `A(D)`.
//!
//! An object is a rational complex `V_∞` together with `Q[W]`-complexes `V_k` for `k >= 1`
//! and a map `σ : V_∞ -> tails(V) = colim_n ∏_{k>=n} V_k`. Objects are stored in germ form:
//! every `V_k` outside a finite set equals one generic stalk, and `σ` is the diagonal of a
//! map `V_∞ -> V_gen` into its fixed part.

mod limits;
mod pi;
mod sections;
pub mod truncated;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::cxmaps::{self, inclusion_first, is_chain_map, postcompose, precompose};
use crate::exactlin::{ChainCx, GradedMap, GradedVec, Matrix, WChainCx, WMap, WVec};
use crate::germ::{union_indices, Germ, Index};

pub use limits::{cokernel_d, coproduct_d, kernel_d, product_d, pullback_d, pushout_d};
pub use pi::{assemble_pi, CornerLevel, PiData};
pub use sections::{global_sections, hom_ext, pitchfork, HomExt, SectionSpace, TailQuotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DObject {
    pub stalks: Germ<WChainCx>,
    pub infty: ChainCx,
    /// `V_∞ -> V_gen`, into the fixed part of the generic stalk.
    pub sigma: GradedMap,
}

/// Input for [`make_d`]: `sigma` maps into the whole generic stalk, plus part first in
/// each degree, and every listed stalk has index below `bound`.
#[derive(Clone, Debug)]
pub struct RawDObject {
    pub stalks: BTreeMap<u64, WChainCx>,
    pub generic: WChainCx,
    pub infty: ChainCx,
    pub sigma: GradedMap,
    pub bound: u64,
}

pub fn make_d(raw: RawDObject) -> Result<DObject> {
    if let Some(&k) = raw.stalks.keys().find(|&&k| k == 0 || k >= raw.bound) {
        return Err(Error::invalid(format!("stalk {k} lies outside 1..{}", raw.bound)));
    }
    let gen = raw.generic.spaces();
    if raw.sigma.source != *raw.infty.spaces() || raw.sigma.target != gen.total() || raw.sigma.shift != 0 {
        return Err(Error::invalid("sigma has the wrong shape"));
    }
    let mut sigma = GradedMap::zero(raw.infty.spaces().clone(), gen.plus.clone(), 0);
    for n in raw.infty.spaces().degrees() {
        let b = raw.sigma.block(n);
        let np = gen.plus.dim(n);
        let minus: Vec<usize> = (np..b.rows()).collect();
        if !b.select_rows(&minus).is_zero() {
            return Err(Error::invalid(format!("sigma leaves the W-fixed part in degree {n}")));
        }
        sigma.set_block(n, b.select_rows(&(0..np).collect::<Vec<_>>()));
    }
    let out = DObject {
        stalks: Germ::new(raw.stalks, raw.generic),
        infty: raw.infty,
        sigma,
    };
    out.validate()?;
    Ok(out)
}

impl DObject {
    pub fn zero() -> Self {
        DObject {
            stalks: Germ::constant(WChainCx::zero()),
            infty: ChainCx::zero(),
            sigma: GradedMap::zero(GradedVec::zero(), GradedVec::zero(), 0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let gen = self.stalks.generic();
        if self.sigma.source != *self.infty.spaces() || self.sigma.target != *gen.plus.spaces() || self.sigma.shift != 0 {
            return Err(Error::invalid("sigma has the wrong shape"));
        }
        if !is_chain_map(&self.sigma, &self.infty, &gen.plus) {
            return Err(Error::invalid("sigma is not a chain map"));
        }
        Ok(())
    }

    pub fn generic(&self) -> &WChainCx {
        self.stalks.generic()
    }

    pub fn stalk(&self, k: u64) -> &WChainCx {
        self.stalks.at(k)
    }

    /// The least `N` with `V_k` generic for `k >= N`.
    pub fn bound(&self) -> u64 {
        self.stalks.bound()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.infty.has_zero_differential() && self.stalks.positions().iter().all(|&i| self.stalks.get(i).has_zero_differential())
    }

    pub fn is_zero(&self) -> bool {
        self.infty.spaces().is_zero() && self.stalks.positions().iter().all(|&i| self.stalks.get(i).is_zero())
    }

    pub fn direct_sum(&self, other: &DObject) -> DObject {
        DObject {
            stalks: self.stalks.zip(&other.stalks, |a, b| a.direct_sum(b)),
            infty: self.infty.direct_sum(&other.infty),
            sigma: self.sigma.direct_sum(&other.sigma),
        }
    }

    /// Graded dimensions of stalk `k` split into fixed and anti-fixed parts.
    pub fn stalk_spaces(&self, i: Index) -> WVec {
        self.stalks.get(i).spaces()
    }

    pub fn shift(&self, s: i64) -> DObject {
        let sigma = {
            let src = self.infty.spaces().shift(s);
            let tgt = self.generic().plus.spaces().shift(s);
            let mut m = GradedMap::zero(src, tgt, 0);
            for n in self.infty.spaces().degrees() {
                m.set_block(n + s, self.sigma.block(n));
            }
            m
        };
        DObject {
            stalks: self.stalks.map(|v| v.shift(s)),
            infty: self.infty.shift(s),
            sigma,
        }
    }
}

/// A map of degree zero: `f_∞` and equivariant stalk maps commuting with `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMap {
    pub infty: GradedMap,
    pub stalks: Germ<WMap>,
}

fn wmap_is_chain(f: &WMap, a: &WChainCx, b: &WChainCx) -> bool {
    f.plus.shift == 0 && is_chain_map(&f.plus, &a.plus, &b.plus) && is_chain_map(&f.minus, &a.minus, &b.minus)
}

fn positions(objs: &[&DObject], maps: &[&DMap]) -> Vec<Index> {
    let mut lists: Vec<Vec<u64>> = objs.iter().map(|o| o.stalks.indices()).collect();
    lists.extend(maps.iter().map(|m| m.stalks.indices()));
    let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
    union_indices(&refs).into_iter().map(Index::At).chain([Index::Generic]).collect()
}

impl DMap {
    pub fn zero(a: &DObject, b: &DObject) -> DMap {
        let idx: Vec<u64> = union_indices(&[&a.stalks.indices(), &b.stalks.indices()]);
        DMap {
            infty: GradedMap::zero(a.infty.spaces().clone(), b.infty.spaces().clone(), 0),
            stalks: Germ::tabulate(&idx, |i| WMap::zero(&a.stalk_spaces(i), &b.stalk_spaces(i), 0)),
        }
    }

    pub fn identity(a: &DObject) -> DMap {
        DMap {
            infty: GradedMap::identity(a.infty.spaces()),
            stalks: a.stalks.map(|v| WMap::identity(&v.spaces())),
        }
    }

    pub fn validate(&self, a: &DObject, b: &DObject) -> Result<()> {
        if !is_chain_map(&self.infty, &a.infty, &b.infty) || self.infty.shift != 0 {
            return Err(Error::invalid("map at infinity is not a chain map of degree 0"));
        }
        for i in positions(&[a, b], &[self]) {
            let f = self.stalks.get(i);
            if !wmap_is_chain(f, a.stalks.get(i), b.stalks.get(i)) {
                return Err(Error::invalid(format!("stalk map is not an equivariant chain map at {i}")));
            }
        }
        let lhs = self.stalks.generic().plus.compose(&a.sigma);
        let rhs = b.sigma.compose(&self.infty);
        if lhs != rhs {
            return Err(Error::invalid("map does not commute with the structure maps"));
        }
        Ok(())
    }

    pub fn compose(&self, first: &DMap) -> DMap {
        DMap {
            infty: self.infty.compose(&first.infty),
            stalks: self.stalks.zip(&first.stalks, |g, f| g.compose(f)),
        }
    }

    pub fn add(&self, other: &DMap) -> DMap {
        DMap {
            infty: self.infty.add(&other.infty),
            stalks: self.stalks.zip(&other.stalks, |f, g| f.add(g)),
        }
    }

    pub fn scale(&self, s: &crate::exactlin::Rat) -> DMap {
        DMap {
            infty: self.infty.scale(s),
            stalks: self.stalks.map(|f| WMap {
                plus: f.plus.scale(s),
                minus: f.minus.scale(s),
            }),
        }
    }

    pub fn direct_sum(&self, other: &DMap) -> DMap {
        DMap {
            infty: self.infty.direct_sum(&other.infty),
            stalks: self.stalks.zip(&other.stalks, |f, g| f.direct_sum(g)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.infty.is_zero() && self.stalks.positions().iter().all(|&i| {
            let f = self.stalks.get(i);
            f.plus.is_zero() && f.minus.is_zero()
        })
    }
}

/// `i_k R`: `R` at `k` and zero elsewhere.
pub fn i_k(k: u64, r: WChainCx) -> DObject {
    assert!(k >= 1, "indices start at 1");
    DObject {
        stalks: Germ::single(k, r, WChainCx::zero()),
        ..DObject::zero()
    }
}

pub fn p_k(v: &DObject, k: u64) -> WChainCx {
    v.stalk(k).clone()
}

/// `i_∞ M`: `M` at infinity and zero stalks.
pub fn i_inf(m: ChainCx) -> DObject {
    DObject {
        sigma: GradedMap::zero(m.spaces().clone(), GradedVec::zero(), 0),
        infty: m,
        stalks: Germ::constant(WChainCx::zero()),
    }
}

pub fn p_inf(v: &DObject) -> ChainCx {
    v.infty.clone()
}

/// The constant sheaf: `M` at every stalk with trivial action, and `σ` the diagonal.
pub fn c(m: ChainCx) -> DObject {
    DObject {
        sigma: GradedMap::identity(m.spaces()),
        stalks: Germ::constant(WChainCx::new(m.clone(), ChainCx::zero())),
        infty: m,
    }
}

/// `⊕_k i_k R`: `R` at every index and zero at infinity.
pub fn sum_of_stalks(r: WChainCx) -> DObject {
    DObject {
        sigma: GradedMap::zero(GradedVec::zero(), r.plus.spaces().clone(), 0),
        stalks: Germ::constant(r),
        infty: ChainCx::zero(),
    }
}

/// The unit `cQ`.
pub fn unit_d() -> DObject {
    c(ChainCx::graded(GradedVec::concentrated(0, 1)))
}

/// Stalkwise tensor product with the diagonal action; `σ_{A⊗B} = σ_A ⊗ σ_B`.
pub fn tensor_d(a: &DObject, b: &DObject) -> DObject {
    let (ga, gb) = (a.generic(), b.generic());
    let into_pp = inclusion_first(
        &ga.plus.spaces().tensor(gb.plus.spaces()),
        &ga.minus.spaces().tensor(gb.minus.spaces()),
    );
    DObject {
        stalks: a.stalks.zip(&b.stalks, |x, y| x.tensor(y)),
        infty: a.infty.tensor(&b.infty),
        sigma: into_pp.compose(&cxmaps::tensor_map(&a.sigma, &b.sigma)),
    }
}

/// `τfix hom(B, C)`: stalkwise mapping complexes with conjugation; at infinity the pairs
/// `(a, g)` with `a : B_∞ -> C_∞` and equivariant `g : B_gen -> C_gen` such that
/// `g σ_B = σ_C a`.
///
/// The germs at infinity also contain arbitrary sequences of equivariant `g` with
/// `g σ_B = 0`; when such `g` exist the result has no germ form.
pub fn internal_hom_d(b: &DObject, c: &DObject) -> Result<DObject> {
    let (gb, gc) = (b.generic(), c.generic());
    let stalks = b.stalks.zip(&c.stalks, |x, y| x.hom(y));
    let hom_gen = stalks.generic().clone();
    let a_cx = ChainCx::hom_complex(&b.infty, &c.infty);
    let mm = gb.minus.spaces().hom(gc.minus.spaces());
    let target = b.infty.spaces().hom(gc.plus.spaces());
    // Φ(a, g) = g_{++} σ_B - σ_C a on hom(B_∞, C_∞) ⊕ hom(B_gen, C_gen)^W
    let src = a_cx.spaces().direct_sum(hom_gen.plus.spaces());
    let mut phi = GradedMap::zero(src.clone(), target.clone(), 0);
    let mut degrees: Vec<i64> = src.degrees().collect();
    degrees.sort();
    for &n in &degrees {
        let pre = precompose(&b.sigma, gc.plus.spaces(), n);
        let post = postcompose(&c.sigma, b.infty.spaces(), n);
        let k_w = pre.kernel().cols() + mm.dim(n);
        if k_w > 0 {
            return Err(Error::unsupported(format!(
                "hom at infinity is not eventually constant: {k_w} equivariant maps in degree {n} kill sigma"
            )));
        }
        let block = post
            .scale(&-crate::exactlin::rat::one())
            .hstack(&pre)
            .hstack(&Matrix::zeros(target.dim(n), mm.dim(n)));
        phi.set_block(n, block);
    }
    let src_cx = a_cx.direct_sum(&hom_gen.plus);
    let (infty, incl) = cxmaps::kernel(&phi, &src_cx)?;
    let to_g = {
        let mut m = GradedMap::zero(src.clone(), hom_gen.plus.spaces().clone(), 0);
        for n in src.degrees() {
            let na = a_cx.spaces().dim(n);
            let ng = hom_gen.plus.spaces().dim(n);
            m.set_block(n, Matrix::zeros(ng, na).hstack(&Matrix::identity(ng)));
        }
        m
    };
    let out = DObject {
        sigma: to_g.compose(&incl),
        stalks,
        infty,
    };
    out.validate().map_err(|e| e.context("internal hom"))?;
    Ok(out)
}

/// Stalkwise homology with the induced structure map.
pub fn homology_d(v: &DObject) -> DObject {
    let gen = v.generic();
    DObject {
        stalks: v.stalks.map(|s| s.homology_cx()),
        infty: ChainCx::graded(v.infty.homology()),
        sigma: v.infty.induced_on_homology(&gen.plus, &v.sigma),
    }
}

/// The map `i_k R -> V` adjoint to an equivariant `f : R -> V_k`.
pub fn i_k_adjunct(k: u64, f: &WMap, r: &WChainCx, v: &DObject) -> Result<DMap> {
    let src = i_k(k, r.clone());
    let map = DMap {
        infty: GradedMap::zero(GradedVec::zero(), v.infty.spaces().clone(), 0),
        stalks: Germ::tabulate(&union_indices(&[&[k], &v.stalks.indices()]), |i| match i {
            Index::At(j) if j == k => f.clone(),
            _ => WMap::zero(&src.stalk_spaces(i), &v.stalk_spaces(i), 0),
        }),
    };
    map.validate(&src, v)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat::int;

    pub(crate) fn q0() -> ChainCx {
        ChainCx::graded(GradedVec::concentrated(0, 1))
    }

    pub(crate) fn qw(i: u32) -> WChainCx {
        WChainCx::graded(&WVec::regular_power(i, 0))
    }

    #[test]
    fn constructors_validate() {
        unit_d().validate().unwrap();
        i_k(3, qw(1)).validate().unwrap();
        i_inf(q0()).validate().unwrap();
        assert_eq!(p_k(&i_k(3, qw(2)), 3), qw(2));
        assert!(p_k(&i_k(3, qw(2)), 4).is_zero());
        assert_eq!(p_inf(&c(q0())), q0());
    }

    #[test]
    fn sigma_must_be_fixed() {
        let gen = qw(1);
        let mut s = GradedMap::zero(GradedVec::concentrated(0, 1), gen.spaces().total(), 0);
        s.set_block(0, Matrix::from_i64(&[&[0], &[1]]));
        let raw = RawDObject {
            stalks: BTreeMap::new(),
            generic: gen.clone(),
            infty: q0(),
            sigma: s.clone(),
            bound: 1,
        };
        assert!(make_d(raw.clone()).is_err());
        s.set_block(0, Matrix::from_i64(&[&[1], &[0]]));
        let ok = make_d(RawDObject { sigma: s, ..raw.clone() }).unwrap();
        assert_eq!(ok.sigma.block(0), Matrix::from_i64(&[&[1]]));
        let far = RawDObject {
            stalks: BTreeMap::from([(5, qw(0))]),
            ..raw
        };
        assert!(make_d(far).is_err());
    }

    #[test]
    fn tensor_examples() {
        let v = i_k(2, qw(1)).direct_sum(&c(q0()));
        let t = tensor_d(&unit_d(), &v);
        assert_eq!(t.stalk_spaces(Index::At(2)), v.stalk_spaces(Index::At(2)));
        assert_eq!(t.infty.spaces(), v.infty.spaces());
        assert!(tensor_d(&i_k(2, qw(1)), &i_k(3, qw(0))).is_zero());
        let sq = tensor_d(&i_k(2, qw(1)), &i_k(2, qw(1)));
        assert_eq!(sq.stalk(2).spaces().total().dim(0), 4);
        assert_eq!(sq.stalk(2).spaces().plus.dim(0), 2);
    }

    #[test]
    fn internal_hom_examples() {
        let h = internal_hom_d(&i_k(2, qw(1)), &i_k(2, qw(1))).unwrap();
        assert_eq!(h.stalk(2).spaces().total().dim(0), 4);
        assert_eq!(h.stalk(2).spaces().plus.dim(0), 2);
        let v = c(q0()).direct_sum(&i_k(1, qw(1)));
        let hc = internal_hom_d(&unit_d(), &v).unwrap();
        assert_eq!(hc.infty.spaces(), v.infty.spaces());
        assert_eq!(global_sections(&hc).truncated_dims(6), global_sections(&v).truncated_dims(6));
        let to_inf = internal_hom_d(&v, &i_inf(q0())).unwrap();
        assert!(to_inf.stalks.positions().iter().all(|&i| to_inf.stalks.get(i).is_zero()));
        assert_eq!(to_inf.infty.spaces().dim(0), 1);
        // a generic stalk missed by sigma gives infinitely many germs at infinity
        let free_gen = sum_of_stalks(WChainCx::new(q0(), ChainCx::zero()));
        assert!(internal_hom_d(&free_gen, &unit_d()).is_err());
    }

    #[test]
    fn homology_kills_acyclic_parts() {
        let mut d = BTreeMap::new();
        d.insert(1, Matrix::from_i64(&[&[1]]));
        let disk = ChainCx::from_diffs(GradedVec::new([(0, 1), (1, 1)]), d).unwrap();
        assert!(homology_d(&c(disk)).is_zero());
        let v = c(q0()).direct_sum(&i_k(2, qw(1)));
        assert_eq!(homology_d(&v), v);
    }

    #[test]
    fn maps_commute_with_sigma() {
        let u = unit_d();
        DMap::identity(&u).validate(&u, &u).unwrap();
        let mut bad = DMap::identity(&u);
        bad.infty = bad.infty.scale(&int(2));
        assert!(bad.validate(&u, &u).is_err());
        let f = WMap::identity(&qw(0).spaces());
        i_k_adjunct(4, &f, &qw(0), &u).unwrap();
    }
}
