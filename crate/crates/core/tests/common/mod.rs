//! Seeded random objects shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use o2model::burnside::BurnsideElement;
use o2model::euler::{AdmissibleRep, BaseRing, FpModule, ModuleElement, QcPresentation};
use o2model::exactlin::rat::{int, rat};
use o2model::exactlin::{ChainCx, GradedMap, GradedVec, Matrix, Rat, WChainCx, WVec};
use o2model::germ::{Germ, Index};
use o2model::model_d::DObject;
use o2model::model_t::{make_t, rep_sphere, TObject};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Gen = ChaCha8Rng;

pub fn gen(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(g: &mut Gen) -> Rat {
    rat(g.gen_range(-4..=4), g.gen_range(1..=3))
}

pub fn nonzero_rat(g: &mut Gen) -> Rat {
    loop {
        let q = small_rat(g);
        if q != int(0) {
            return q;
        }
    }
}

pub fn matrix(g: &mut Gen, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if g.gen_bool(0.6) {
                m.set(r, c, small_rat(g));
            }
        }
    }
    m
}

/// A matrix of full column rank (`rows >= cols`).
pub fn injective(g: &mut Gen, rows: usize, cols: usize) -> Matrix {
    assert!(rows >= cols);
    loop {
        let m = matrix(g, rows, cols);
        if m.rank() == cols {
            return m;
        }
    }
}

pub fn burnside(g: &mut Gen, max_exceptional: usize) -> BurnsideElement {
    let n = g.gen_range(0..=max_exceptional);
    let mut ex = BTreeMap::new();
    for _ in 0..n {
        ex.insert(g.gen_range(1..=20u64), small_rat(g));
    }
    BurnsideElement::new(small_rat(g), Germ::new(ex, small_rat(g)))
}

pub fn rep(g: &mut Gen) -> AdmissibleRep {
    let n = g.gen_range(0..=3);
    AdmissibleRep::new((0..n).map(|_| g.gen_range(1..=12u64)).collect()).unwrap()
}

pub fn graded(g: &mut Gen, lo: i64, hi: i64, max: usize) -> GradedVec {
    GradedVec::new((lo..=hi).map(|d| (d, g.gen_range(0..=max))))
}

pub fn wvec(g: &mut Gen) -> WVec {
    WVec::new(graded(g, -1, 1, 2), graded(g, -1, 1, 2))
}

pub fn graded_map(g: &mut Gen, source: &GradedVec, target: &GradedVec) -> GradedMap {
    let mut m = GradedMap::zero(source.clone(), target.clone(), 0);
    for d in source.degrees() {
        m.set_block(d, matrix(g, target.dim(d), source.dim(d)));
    }
    m
}

/// A graded object of `A(D)` with up to three listed stalks among `1..=6`.
pub fn d_object(g: &mut Gen) -> DObject {
    let generic = wvec(g);
    let mut ex = BTreeMap::new();
    for _ in 0..g.gen_range(0..=3) {
        ex.insert(g.gen_range(1..=6u64), WChainCx::graded(&wvec(g)));
    }
    let infty = if g.gen_bool(0.2) { GradedVec::zero() } else { graded(g, -1, 1, 2) };
    let sigma = graded_map(g, &infty, &generic.plus);
    DObject {
        stalks: Germ::new(ex, WChainCx::graded(&generic)),
        infty: ChainCx::graded(infty),
        sigma,
    }
}

/// Like [`d_object`], with a split injective structure map.
pub fn d_object_split(g: &mut Gen) -> DObject {
    let mut v = d_object(g);
    let plus = v.generic().plus.spaces().clone();
    let infty = GradedVec::new(plus.dims().iter().map(|(&d, &n)| (d, g.gen_range(0..=n))));
    let mut sigma = GradedMap::zero(infty.clone(), plus.clone(), 0);
    for d in infty.degrees() {
        sigma.set_block(d, injective(g, plus.dim(d), infty.dim(d)));
    }
    v.infty = ChainCx::graded(infty);
    v.sigma = sigma;
    v
}

pub fn torsion_at(k: u64, d: i64, m: i64) -> FpModule {
    FpModule::new(BaseRing::OF, Germ::single(k, QcPresentation::cyclic_torsion(d, m), QcPresentation::zero())).unwrap()
}

/// `e(N)` for a torsion module `N`: no vertex.
pub fn torsion_object(n: &FpModule) -> TObject {
    make_t(n, vec![], &n.comps.map(|p| Matrix::zeros(0, p.ngens()))).unwrap()
}

/// Spheres (suspended by even degrees) and torsion objects, at most three generators.
pub fn fp_object(g: &mut Gen) -> TObject {
    let mut out = rep_sphere(&rep(g)).shift(2 * g.gen_range(-1..=1));
    let mut gens = 1;
    let extra = g.gen_range(0..=2);
    for _ in 0..extra {
        let piece = if g.gen_bool(0.5) {
            torsion_object(&torsion_at(g.gen_range(1..=3), 2 * g.gen_range(-1..=1), g.gen_range(1..=2)))
        } else {
            rep_sphere(&rep(g))
        };
        gens += 1;
        out = out.direct_sum(&piece).unwrap();
    }
    assert!(gens <= 3);
    out
}

/// A random homogeneous element of the nub; coordinates respect generator degrees.
pub fn element(g: &mut Gen, a: &TObject) -> ModuleElement {
    let nub = a.nub();
    let degrees: Vec<i64> = nub.comps.positions().iter().flat_map(|&i| nub.comp(i).gens.clone()).collect();
    let d = degrees[g.gen_range(0..degrees.len())] - 2 * g.gen_range(0..=1);
    let pick = |g: &mut Gen, i: Index| -> Vec<Rat> {
        nub.comp(i)
            .gens
            .iter()
            .map(|&x| if x >= d && (x - d) % 2 == 0 && g.gen_bool(0.7) { small_rat(g) } else { int(0) })
            .collect()
    };
    let generic = pick(g, Index::Generic);
    let mut ex = BTreeMap::new();
    for k in nub.indices() {
        ex.insert(k, pick(g, Index::At(k)));
    }
    ModuleElement {
        degree: d,
        coords: Germ::new(ex, generic),
    }
}
