mod common;

use common::*;
use o2model::adams::adams_dihedral;
use o2model::burnside::{hasse_assemble, hasse_decompose, restrict, BurnsideElement};
use o2model::cli;
use o2model::format::{self, Document};
use o2model::germ::Index;
use o2model::model_d::truncated::hom_ext_truncated;
use o2model::model_d::{hom_ext, homology_d, tensor_d, unit_d, DObject};
use proptest::prelude::*;

fn positions(a: &DObject, b: &DObject) -> Vec<Index> {
    let mut out: Vec<Index> = (1..=a.bound().max(b.bound()) + 1).map(Index::At).collect();
    out.push(Index::Generic);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn burnside_ring_axioms(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, y, z) = (burnside(&mut g, 6), burnside(&mut g, 6), burnside(&mut g, 6));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&BurnsideElement::one()), x.clone());
        prop_assert_eq!(x.sub(&x), BurnsideElement::zero());
    }

    #[test]
    fn restriction_is_a_ring_map(seed in any::<u64>(), n in 1u64..=12) {
        let mut g = gen(seed);
        let (x, y) = (burnside(&mut g, 6), burnside(&mut g, 6));
        let (rx, ry) = (restrict(&x, n).unwrap(), restrict(&y, n).unwrap());
        prop_assert_eq!(restrict(&x.mul(&y), n).unwrap(), rx.mul(&ry));
        prop_assert_eq!(restrict(&x.add(&y), n).unwrap(), rx.add(&ry));
    }

    #[test]
    fn hasse_round_trip(seed in any::<u64>()) {
        let x = burnside(&mut gen(seed), 8);
        prop_assert_eq!(hasse_assemble(&hasse_decompose(&x)).unwrap(), x);
    }

    #[test]
    fn d_objects_survive_print_and_parse(seed in any::<u64>()) {
        let v = d_object(&mut gen(seed));
        let doc = Document::DObject(format::d_doc(&v));
        let text = format::print(&doc);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let Document::DObject(d) = back else { unreachable!() };
        let w = format::d_from_doc(&d).unwrap();
        prop_assert_eq!(format::d_doc(&w), format::d_doc(&v));
    }

    #[test]
    fn tensor_is_symmetric_on_dimensions(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (d_object(&mut g), d_object(&mut g));
        let (ab, ba) = (tensor_d(&a, &b), tensor_d(&b, &a));
        for i in positions(&a, &b) {
            prop_assert_eq!(ab.stalk_spaces(i), ba.stalk_spaces(i));
        }
        prop_assert_eq!(ab.infty.spaces(), ba.infty.spaces());
        let u = tensor_d(&a, &unit_d());
        for i in positions(&a, &a) {
            prop_assert_eq!(u.stalk_spaces(i), a.stalk_spaces(i));
        }
    }

    #[test]
    fn homology_is_idempotent(seed in any::<u64>()) {
        let mut g = gen(seed);
        let v = d_object(&mut g);
        let h = homology_d(&v);
        prop_assert_eq!(homology_d(&h), h.clone());
        // graded objects are their own homology
        prop_assert_eq!(h, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn germ_hom_ext_matches_truncation(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, v) = (d_object(&mut g), d_object(&mut g));
        let he = hom_ext(&x, &v).unwrap();
        let k = x.bound().max(v.bound()).max(2) + 1;
        let tr = hom_ext_truncated(&x, &v, k).unwrap();
        let hom = he.hom.truncated_dims(k);
        for t in -4..=4 {
            let (h, e) = tr.get(&t).copied().unwrap_or((0, 0));
            prop_assert_eq!(h, hom.dim(t), "hom in degree {}", t);
            prop_assert_eq!(e, he.ext.dim(t), "ext in degree {}", t);
        }
    }

    #[test]
    fn adams_total_is_hom_plus_ext(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, y) = (d_object(&mut g), d_object(&mut g));
        let r = adams_dihedral(&x, &y).unwrap();
        let k = x.bound().max(y.bound()).max(2) + 1;
        let total = r.total_truncated(k).unwrap();
        let hom = hom_ext_truncated(&x, &y, k).unwrap();
        let ext = hom_ext_truncated(&x.shift(1), &y, k).unwrap();
        for t in -4..=4 {
            let want = hom.get(&t).map_or(0, |p| p.0) + ext.get(&t).map_or(0, |p| p.1);
            prop_assert_eq!(total.dim(t), want, "degree {}", t);
        }
    }

    #[test]
    fn cli_output_is_deterministic(seed in any::<u64>()) {
        let mut g = gen(seed);
        let dir = std::env::temp_dir().join(format!("o2model-prop-{seed}"));
        std::fs::create_dir_all(&dir).unwrap();
        let mut paths = Vec::new();
        for i in 0..2 {
            let p = dir.join(format!("v{i}.json"));
            std::fs::write(&p, format::print(&Document::DObject(format::d_doc(&d_object(&mut g))))).unwrap();
            paths.push(p.display().to_string());
        }
        for sub in ["hom", "ext", "adams", "tensor"] {
            for fmt in ["text", "machine"] {
                let args = ["o2model", sub, &paths[0], &paths[1], "--format", fmt];
                let a = cli::run(args);
                prop_assert_eq!(&a, &cli::run(args));
                prop_assert_eq!(a.code, 0, "{} failed: {}", sub, a.stderr);
            }
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
