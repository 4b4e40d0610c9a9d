//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion; exits nonzero if any fail.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use common::*;
use o2model::adams::generator_table;
use o2model::burnside::{
    divisors, e_d, hasse_assemble, hasse_decompose, restrict, BurnsideElement, DihedralBurnside,
};
use o2model::cli;
use o2model::euler::{
    dimension_function, euler_mul, is_fg_projective, AdmissibleRep, BaseRing, FpModule, QcPresentation,
};
use o2model::exactlin::rat::{int, one};
use o2model::exactlin::wvec::hom_w_dim;
use o2model::exactlin::{ChainCx, GradedVec, Matrix, WChainCx, WVec};
use o2model::format;
use o2model::germ::{Germ, Index};
use o2model::model_d::truncated::{extension, hom_ext_truncated, six_term_failures};
use o2model::model_d::{assemble_pi, c, hom_ext, i_k, p_inf, p_k, unit_d, CornerLevel, PiData};
use o2model::model_t::{
    cover, dual, function_object, g, g_exactness_failures, hom_set, hom_window, is_dualisable, rep_sphere, s0,
    tensor_t, TMap, TObject,
};
use rand::Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Burnside calculus: restriction is a unital ring map and the idempotents of `A(D_2n)` are
/// a complete orthogonal family.
fn criterion_1() -> Outcome {
    let mut g = gen(1);
    for n in 1..=12u64 {
        ensure!(ok(restrict(&BurnsideElement::one(), n), "restrict")? == DihedralBurnside::one(n), "restrict(1) != 1 for n={n}");
        for _ in 0..100 {
            let (x, y) = (burnside(&mut g, 8), burnside(&mut g, 8));
            let (rx, ry) = (ok(restrict(&x, n), "restrict")?, ok(restrict(&y, n), "restrict")?);
            ensure!(ok(restrict(&x.mul(&y), n), "restrict")? == rx.mul(&ry), "restrict not multiplicative, n={n}");
            ensure!(ok(restrict(&x.add(&y), n), "restrict")? == rx.add(&ry), "restrict not additive, n={n}");
        }
        let ids = DihedralBurnside::idempotents(n);
        ensure!(ids.len() == 2 * divisors(n).len(), "n={n}: {} idempotents", ids.len());
        let mut sum = DihedralBurnside::zero(n);
        for (i, e) in ids.iter().enumerate() {
            ensure!(e.mul(e) == *e, "n={n}: idempotent {i} is not idempotent");
            for (j, f) in ids.iter().enumerate() {
                if i != j {
                    ensure!(e.mul(f).is_zero(), "n={n}: idempotents {i}, {j} not orthogonal");
                }
            }
            sum = sum.add(e);
        }
        ensure!(sum == DihedralBurnside::one(n), "n={n}: idempotents do not sum to 1");
    }
    Ok(())
}

/// Hasse square round trip on 500 elements.
fn criterion_2() -> Outcome {
    let mut g = gen(2);
    for _ in 0..500 {
        let x = burnside(&mut g, 8);
        let h = hasse_decompose(&x);
        ensure!(h.germ.generic() == &h.corner.1, "limit of the germ differs from the O(2) value");
        ensure!(ok(hasse_assemble(&h), "assemble")? == x, "round trip changed the element");
        let mut bad = h.clone();
        bad.corner.1 = &bad.corner.1 + one();
        ensure!(hasse_assemble(&bad).is_err(), "incompatible corner accepted");
    }
    Ok(())
}

/// Exponent of `c^V` at `k` counted directly: characters divisible by `k`.
fn euler_oracle(v: &AdmissibleRep, k: u64) -> u64 {
    v.chars.iter().filter(|&&n| n % k == 0).count() as u64
}

/// Euler class identities and `Σ^V S^0 ≅ S^V`.
fn criterion_3() -> Outcome {
    let mut g = gen(3);
    for _ in 0..200 {
        let (v, w) = (rep(&mut g), rep(&mut g));
        let prod = euler_mul(&dimension_function(&v), &dimension_function(&w));
        ensure!(prod == dimension_function(&v.direct_sum(&w)), "c^V c^W != c^(V+W) for {v:?}, {w:?}");
        for k in 1..=30 {
            ensure!(prod.exponent(k) == euler_oracle(&v, k) + euler_oracle(&w, k), "exponent at {k} for {v:?}, {w:?}");
        }
    }
    // Σ^{2n} Q[c] and the span of c^{-n}, c^{-n+1}, ... agree degreewise
    for n in -3i64..=3 {
        let shifted = QcPresentation::free(vec![0]).shift(2 * n);
        for d in -12..=12 {
            let oracle = usize::from(d <= 2 * n && d % 2 == 0);
            ensure!(shifted.dim(d, BaseRing::OF.at(Index::Generic)) == oracle, "Σ^{} Q[c] in degree {d}", 2 * n);
        }
    }
    for _ in 0..10 {
        let v = rep(&mut g);
        let (a, b) = (s0().sigma_rep(&v, true), rep_sphere(&v));
        let f = ok(hom_set(&a, &b, 0), "hom")?;
        let h = ok(hom_set(&b, &a, 0), "hom")?;
        ensure!(f.dim() == 1 && h.dim() == 1, "degree 0 maps between Σ^V S^0 and S^V for {v:?}");
        let end = ok(hom_set(&b, &b, 0), "hom")?;
        let loop_ = f.basis[0].compose(&h.basis[0]);
        let x = end.coordinates(&loop_).ok_or("composite is not a map")?;
        ensure!(x.iter().any(|q| *q != int(0)), "Σ^V S^0 -> S^V is not invertible for {v:?}");
        ensure!(!TMap::identity(&b).is_zero_map(&b, &b), "identity of S^V vanishes");
    }
    Ok(())
}

fn positions() -> Vec<Index> {
    (1..=6).map(Index::At).chain([Index::Generic]).collect()
}

fn dual_suite(g: &mut Gen) -> Result<Vec<TObject>, String> {
    let mut out = Vec::new();
    for _ in 0..4 {
        out.push(rep_sphere(&rep(g)));
    }
    // wide spheres from covers of torsion elements
    for _ in 0..6 {
        let a = fp_object(g);
        let n = element(g, &a);
        out.push(ok(cover(&a, &n), "cover")?.sphere);
    }
    let t = torsion_at(1, 0, 1);
    out.push(ok(g_of(&t), "g")?);
    out.push(ok(g_of(&torsion_at(2, 0, 2).direct_sum(&t).unwrap()), "g")?);
    let n = out.len();
    for i in 0..n.min(4) {
        out.push(ok(out[i].direct_sum(&out[n - 1 - i]), "sum")?);
    }
    Ok(out)
}

fn g_of(n: &FpModule) -> o2model::Result<TObject> {
    g(n)
}

/// Dualisability agrees with `F(A, S^0) ⊗ B ≅ F(A, B)` on five probes over `[-10, 10]`.
fn criterion_4() -> Outcome {
    let mut g = gen(4);
    let probes = vec![
        s0(),
        rep_sphere(&AdmissibleRep::new(vec![1]).unwrap()),
        rep_sphere(&AdmissibleRep::new(vec![2, 3]).unwrap()),
        torsion_object(&torsion_at(1, 0, 1)),
        torsion_object(&torsion_at(2, 2, 2)),
    ];
    let pos = positions();
    let (mut yes, mut no) = (0, 0);
    for a in dual_suite(&mut g)? {
        let claimed = ok(is_dualisable(&a), "is_dualisable")?;
        let da = ok(dual(&a), "dual")?;
        let mut holds = true;
        for b in &probes {
            let lhs = ok(tensor_t(&da, b), "tensor")?.profile(&pos, -10, 10);
            let rhs = ok(function_object(&a, b), "function object")?.profile(&pos, -10, 10);
            holds &= lhs == rhs;
        }
        ensure!(claimed == holds, "is_dualisable says {claimed}, the definition says {holds}");
        if claimed {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure!(yes > 0 && no > 0, "suite is one-sided: {yes} dualisable, {no} not");
    Ok(())
}

/// `cover` succeeds on 200 random objects.
fn criterion_5() -> Outcome {
    let mut g = gen(5);
    for trial in 0..200 {
        let a = fp_object(&mut g);
        ensure!(a.nub().comp(Index::Generic).ngens() <= 3, "trial {trial}: more than three generators");
        let n = element(&mut g, &a);
        let r = ok(cover(&a, &n), &format!("trial {trial}"))?;
        ok(r.map.validate(&r.sphere, &a), "cover map")?;
        let last = r.map.theta.map(|m| m.col(m.cols() - 1));
        ensure!(last.all_zip(&n.coords, |x, y| x == y), "trial {trial}: the element is not hit");
        ensure!(ok(is_fg_projective(&r.sphere.nub()), "projectivity")?.projective, "trial {trial}: nub not projective");
    }
    Ok(())
}

fn dualisable(g: &mut Gen) -> Result<TObject, String> {
    let mut b = rep_sphere(&rep(g));
    if g.gen_bool(0.3) {
        b = ok(b.direct_sum(&rep_sphere(&rep(g)).shift(2)), "sum")?;
    }
    if g.gen_bool(0.3) {
        let a = fp_object(g);
        let n = element(g, &a);
        b = ok(cover(&a, &n), "cover")?.sphere;
    }
    Ok(b)
}

/// `hom(A ⊗ B, C) = hom(A, F(B, C))` degreewise for dualisable `B`.
fn criterion_6() -> Outcome {
    let mut g = gen(6);
    for trial in 0..50 {
        let a = fp_object(&mut g);
        let b = dualisable(&mut g)?;
        let cc = fp_object(&mut g);
        let ab = ok(tensor_t(&a, &b), "tensor")?;
        let fbc = ok(function_object(&b, &cc), "function object")?;
        let (w1, w2) = (hom_window(&ab, &cc), hom_window(&a, &fbc));
        let (lo, hi) = match (w1, w2) {
            (Some(x), Some(y)) => (x.0.min(y.0), x.1.max(y.1)),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => continue,
        };
        for t in lo..=hi {
            let l = ok(hom_set(&ab, &cc, t), "hom")?.dim();
            let r = ok(hom_set(&a, &fbc, t), "hom")?.dim();
            ensure!(l == r, "trial {trial}, degree {t}: {l} vs {r}");
        }
    }
    Ok(())
}

/// `dim Hom(QW^i, QW^j)^W` from characters: `QW^i` has trace `2^i` at 1 and 0 at `w` for `i >= 1`.
fn character_oracle(i: u32, j: u32) -> usize {
    let chi = |n: u32| -> (i64, i64) { (1 << n, if n == 0 { 1 } else { 0 }) };
    let ((a1, aw), (b1, bw)) = (chi(i), chi(j));
    ((a1 * b1 + aw * bw) / 2) as usize
}

/// The generator table, with dimensions checked against characters.
fn criterion_7() -> Outcome {
    let lines = ok(generator_table(4), "generator table")?;
    for l in &lines {
        ensure!(l.pass, "line failed: {} (computed {})", l.label, l.computed);
    }
    let qw = |i: u32| WChainCx::graded(&WVec::regular_power(i, 0));
    for k in [1u64, 4] {
        for i in 0..=4u32 {
            for j in 0..=4u32 {
                let he = ok(hom_ext(&i_k(k, qw(j)), &i_k(k, qw(i))), "hom")?;
                let dims = he.hom.finite_dims().ok_or("infinite hom between skyscrapers")?;
                ensure!(dims.dim(0) == character_oracle(j, i), "[i_k QW^{j}, i_k QW^{i}] has dim {}", dims.dim(0));
                ensure!(dims.total_dim() == dims.dim(0) && he.ext.is_zero(), "stray degrees or ext");
                let cross = ok(hom_ext(&i_k(k + 1, qw(j)), &i_k(k, qw(i))), "hom")?;
                ensure!(cross.hom.finite_dims() == Some(GradedVec::zero()), "cross-index hom nonzero");
            }
            let into = ok(hom_ext(&i_k(k, qw(i)), &unit_d()), "hom")?.hom.finite_dims();
            let out = ok(hom_ext(&unit_d(), &i_k(k, qw(i))), "hom")?.hom.finite_dims();
            ensure!(into.map(|d| d.dim(0)) == Some(character_oracle(i, 0)), "[i_k QW^{i}, cQ]");
            ensure!(out.map(|d| d.dim(0)) == Some(character_oracle(0, i)), "[cQ, i_k QW^{i}]");
        }
    }
    // [cQ, cQ] as eventually constant sequences: one value per index, determined near infinity
    let he = ok(hom_ext(&unit_d(), &unit_d()), "hom")?;
    ensure!(he.hom.generic_sum == GradedVec::concentrated(0, 1), "[cQ,cQ] finitely supported part");
    ensure!(he.hom.infinity == GradedVec::concentrated(0, 1), "[cQ,cQ] value at infinity");
    ensure!(he.hom.generic_product.is_zero() && he.ext.is_zero(), "[cQ,cQ] has extra parts");
    let ed = e_d();
    ensure!(ed.mul(&ed) == ed && ed.so2 == int(0) && ed.dihedral.is_constant(), "e_D is not the dihedral unit");
    Ok(())
}

/// Six-term sequences against the finite oracle, and Ext vanishing.
fn criterion_8() -> Outcome {
    let mut g = gen(8);
    for trial in 0..100 {
        let v1 = d_object(&mut g);
        let v3 = d_object(&mut g);
        let phi = graded_map(&mut g, v3.infty.spaces(), v1.generic().plus.spaces());
        let (v2, f, h) = ok(extension(&v1, &v3, &phi), "extension")?;
        let x = d_object(&mut g);
        let bad = ok(six_term_failures(&x, &f, &h, [&v1, &v2, &v3], 8), "six-term")?;
        ensure!(bad.is_empty(), "trial {trial}: not exact at {bad:?}");
    }
    for trial in 0..50 {
        let y = d_object(&mut g);
        let split = d_object_split(&mut g);
        let mut no_infinity = d_object(&mut g);
        no_infinity.infty = ChainCx::zero();
        no_infinity.sigma = o2model::exactlin::GradedMap::zero(GradedVec::zero(), no_infinity.generic().plus.spaces().clone(), 0);
        for x in [&split, &no_infinity] {
            let he = ok(hom_ext(x, &y), "hom_ext")?;
            ensure!(he.ext.is_zero() && he.ext_all_germs.is_zero(), "trial {trial}: Ext does not vanish");
            let t = ok(hom_ext_truncated(x, &y, 8), "oracle")?;
            ensure!(t.values().all(|&(_, e)| e == 0), "trial {trial}: oracle Ext does not vanish");
        }
    }
    Ok(())
}

/// Assembly from homotopy of fixed points.
fn criterion_9() -> Outcome {
    let line = GradedVec::concentrated(0, 1);
    let sphere = PiData {
        stalks: Germ::constant(WVec::trivial(line.clone())),
        corner: vec![CornerLevel {
            n: 1,
            space: line.clone(),
            next: None,
            to_stalks: BTreeMap::new(),
            to_generic: o2model::exactlin::GradedMap::identity(&line),
        }],
    };
    let got = ok(assemble_pi(&sphere), "assemble")?;
    let iso = ok(hom_ext(&got, &unit_d()), "hom")?;
    ensure!(got == unit_d(), "sphere datum does not give cQ");
    ensure!(iso.hom.infinity.dim(0) == 1, "no map at infinity");
    for k in 1..=5u64 {
        for i in 0..=3u32 {
            let data = PiData {
                stalks: Germ::single(k, WVec::regular_power(i, 0), WVec::zero()),
                corner: vec![],
            };
            let want = i_k(k, WChainCx::graded(&WVec::regular_power(i, 0)));
            ensure!(ok(assemble_pi(&data), "assemble")? == want, "single subgroup datum at {k}, power {i}");
        }
    }
    Ok(())
}

/// `p_k i_k = id`, `p_∞ c = id`, and `i_k ⊣ p_k ⊣ i_k` on dimensions.
fn criterion_10() -> Outcome {
    let mut g = gen(10);
    for trial in 0..50 {
        let v = d_object(&mut g);
        let k = g.gen_range(1..=6u64);
        let r = WChainCx::graded(&wvec(&mut g));
        ensure!(p_k(&i_k(k, r.clone()), k) == r, "p_k i_k != id");
        let m = ChainCx::graded(graded(&mut g, -1, 1, 2));
        ensure!(p_inf(&c(m.clone())) == m, "p_inf c != id");
        let vk = v.stalk_spaces(Index::At(k));
        let rs = r.spaces();
        let left = ok(hom_ext(&i_k(k, r.clone()), &v), "hom")?;
        let right = ok(hom_ext(&v, &i_k(k, r.clone())), "hom")?;
        let (l, rr) = (left.hom.finite_dims().ok_or("left hom infinite")?, right.hom.finite_dims().ok_or("right hom infinite")?);
        for t in -3..=3 {
            ensure!(l.dim(t) == hom_w_dim(&rs, &vk, t), "trial {trial}: Hom(i_k R, V) in degree {t}");
            ensure!(rr.dim(t) == hom_w_dim(&vk, &rs, t), "trial {trial}: Hom(V, i_k R) in degree {t}");
        }
        ensure!(left.ext.is_zero() && right.ext.is_zero(), "trial {trial}: Ext against a skyscraper");
        // the same through the finite oracle
        let kk = v.bound().max(k + 1);
        let lo = ok(hom_ext_truncated(&i_k(k, r.clone()), &v, kk), "oracle")?;
        for (t, (h, _)) in lo {
            ensure!(h == hom_w_dim(&rs, &vk, t), "trial {trial}: oracle Hom(i_k R, V) in degree {t}");
        }
    }
    Ok(())
}

type Ses = (FpModule, FpModule, FpModule, Germ<Matrix>, Germ<Matrix>);

fn free_at(gens: Germ<i64>) -> FpModule {
    FpModule::free(BaseRing::OF, &[gens])
}

/// `0 -> Σ^{-2m} F -c^m-> F -> F/c^m -> 0` with `m` chosen per component (zero generically).
fn multiplication_ses(g: &mut Gen) -> Ses {
    let d = 2 * g.gen_range(-1..=1);
    let mut ms = BTreeMap::new();
    for _ in 0..g.gen_range(1..=3) {
        ms.insert(g.gen_range(1..=5u64), g.gen_range(1..=2i64));
    }
    let m = Germ::new(ms, 0i64);
    let a = free_at(m.map(|&mm| d - 2 * mm));
    let b = free_at(Germ::constant(d));
    let c = FpModule::new(
        BaseRing::OF,
        m.map(|&mm| if mm == 0 { QcPresentation::zero() } else { QcPresentation::cyclic_torsion(d, mm) }),
    )
    .unwrap();
    let f = Germ::constant(Matrix::identity(1));
    let h = m.map(|&mm| if mm == 0 { Matrix::zeros(0, 1) } else { Matrix::identity(1) });
    (a, b, c, f, h)
}

fn piece(g: &mut Gen) -> FpModule {
    if g.gen_bool(0.5) {
        torsion_at(g.gen_range(1..=4), 2 * g.gen_range(-1..=1), g.gen_range(1..=2))
    } else {
        free_at(Germ::single(g.gen_range(1..=4), 2 * g.gen_range(-1..=0), 2 * g.gen_range(-1..=0)))
    }
}

fn split_ses(g: &mut Gen) -> Ses {
    let a = piece(g);
    let c = piece(g);
    let b = a.direct_sum(&c).unwrap();
    let idx: Vec<u64> = b.indices();
    let f = Germ::tabulate(&idx, |i| {
        let (na, nc) = (a.comp(i).ngens(), c.comp(i).ngens());
        Matrix::identity(na).vstack(&Matrix::zeros(nc, na))
    });
    let h = Germ::tabulate(&idx, |i| {
        let (na, nc) = (a.comp(i).ngens(), c.comp(i).ngens());
        Matrix::zeros(nc, na).hstack(&Matrix::identity(nc))
    });
    (a, b, c, f, h)
}

fn sum_ses(x: Ses, y: Ses) -> Ses {
    let idx = o2model::germ::union_indices(&[&x.1.indices(), &y.1.indices(), &x.0.indices(), &y.0.indices(), &x.2.indices(), &y.2.indices()]);
    let f = Germ::tabulate(&idx, |i| x.3.get(i).block_diag(y.3.get(i)));
    let h = Germ::tabulate(&idx, |i| x.4.get(i).block_diag(y.4.get(i)));
    (
        x.0.direct_sum(&y.0).unwrap(),
        x.1.direct_sum(&y.1).unwrap(),
        x.2.direct_sum(&y.2).unwrap(),
        f,
        h,
    )
}

/// `g` preserves short exact sequences at truncation 8.
fn criterion_11() -> Outcome {
    let mut g = gen(11);
    for trial in 0..50 {
        let s = match trial % 3 {
            0 => split_ses(&mut g),
            1 => multiplication_ses(&mut g),
            _ => {
                let x = multiplication_ses(&mut g);
                let y = split_ses(&mut g);
                sum_ses(x, y)
            }
        };
        let bad = ok(g_exactness_failures(&s.0, &s.1, &s.2, &s.3, &s.4, 8, (-6, 6)), &format!("trial {trial}"))?;
        ensure!(bad.is_empty(), "trial {trial}: not exact at {:?}", &bad[..bad.len().min(5)]);
    }
    Ok(())
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Determinism of reports and parse/print identity on the sample corpus.
fn criterion_12() -> Outcome {
    let dir = data_dir();
    let mut files: Vec<PathBuf> = ok(std::fs::read_dir(&dir), "data dir")?.map(|e| e.unwrap().path()).collect();
    files.sort();
    ensure!(files.len() >= 10, "corpus has {} files", files.len());
    for f in &files {
        let text = ok(std::fs::read_to_string(f), "read")?;
        let doc = ok(format::parse(&text), &f.display().to_string())?;
        ensure!(format::print(&doc) == text, "{} is not printed back verbatim", f.display());
    }
    let p = |name: &str| dir.join(name).display().to_string();
    let jobs: Vec<Vec<String>> = vec![
        vec!["restrict".into(), "--n".into(), "6".into(), "e_C".into()],
        vec!["idempotents".into(), "--n".into(), "12".into()],
        vec!["hasse".into(), p("burnside_mixed.json")],
        vec!["validate".into(), p("t_sphere_v.json")],
        vec!["validate".into(), p("bad_beta_not_iso.json")],
        vec!["tensor".into(), p("t_sphere_v.json"), p("t_sphere_v.json")],
        vec!["hom".into(), p("d_unit.json"), p("d_point_qw2.json"), "--truncation".into(), "4".into()],
        vec!["ext".into(), p("d_infinity.json"), p("d_tails.json")],
        vec!["homology".into(), p("d_constant_disk.json")],
        vec!["cover".into(), p("t_unit_plus_torsion.json"), "--element".into(), p("element_torsion.json")],
        vec!["dual".into(), p("t_sphere_v.json")],
        vec!["adams".into(), p("c_sphere_v.json"), p("c_unit.json"), "--degree-window".into(), "-3:3".into()],
        vec!["adams".into(), p("d_infinity.json"), p("d_tails.json")],
        vec!["generator-table".into(), "--max-power".into(), "2".into()],
    ];
    for job in jobs {
        for fmt in ["text", "machine"] {
            let mut args = vec!["o2model".to_string()];
            args.extend(job.iter().cloned());
            args.extend(["--format".to_string(), fmt.to_string()]);
            let a = cli::run(args.clone());
            let b = cli::run(args.clone());
            ensure!(a == b, "{job:?} is not deterministic");
            ensure!(a.code == 0 || job[1].ends_with("bad_beta_not_iso.json"), "{job:?} exited {}: {}", a.code, a.stderr);
            if fmt == "machine" && a.code == 0 {
                let doc = ok(format::parse(&a.stdout), "report")?;
                ensure!(format::print(&doc) == a.stdout, "{job:?} report does not round trip");
            }
        }
    }
    let bad = cli::run(["o2model", "validate", &p("bad_beta_not_iso.json")]);
    ensure!(bad.code == 1 && bad.stderr.contains("generic component"), "bad object: {bad:?}");
    let missing = cli::run(["o2model", "validate", &p("missing.json")]);
    ensure!(missing.code == 2, "missing file exited {}", missing.code);
    Ok(())
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "Burnside restriction and idempotents", criterion_1),
        (2, "Hasse square", criterion_2),
        (3, "Euler class identities", criterion_3),
        (4, "dualisability", criterion_4),
        (5, "enough wide spheres", criterion_5),
        (6, "hom-tensor adjunction in A(T)", criterion_6),
        (7, "A(D) generator table", criterion_7),
        (8, "Ext soundness", criterion_8),
        (9, "pi assembly", criterion_9),
        (10, "adjunction ladder in A(D)", criterion_10),
        (11, "g exactness", criterion_11),
        (12, "CLI determinism and round trip", criterion_12),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (n, name, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = std::time::Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {n:>2} PASS {name} ({secs:.1}s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2} FAIL {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
