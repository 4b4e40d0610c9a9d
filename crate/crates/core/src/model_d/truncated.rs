//! A finite stand-in for `A(D)` used to check Hom and Ext by brute force.
//!
//! Indices `1..=K` are kept, every larger index is collapsed to one tail point `τ` carrying
//! the generic stalk, and `σ : V_∞ -> V_τ^W`. Everything is finite dimensional, so
//! `Hom = ker δ` and `Ext = coker δ` with `δ(a, (g_j), g_τ) = g_τ σ_X - σ_V a` can be
//! written down as matrices and compared with the germ-form answer.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactlin::cxmaps::{postcompose, section};
use crate::exactlin::matrix::subspace;
use crate::exactlin::{GradedMap, GradedVec, Matrix, WMap};
use crate::germ::{union_indices, Index};

use super::sections::{alpha_beta, require_graded};
use super::{DMap, DObject};

/// The points of the truncation: `1..=K` then the tail.
fn points(k: u64) -> Vec<Index> {
    (1..=k).map(Index::At).chain([Index::Generic]).collect()
}

fn check_truncation(objs: &[&DObject], maps: &[&DMap], k: u64) -> Result<()> {
    let mut lists: Vec<Vec<u64>> = objs.iter().map(|o| o.stalks.indices()).collect();
    lists.extend(maps.iter().map(|m| m.stalks.indices()));
    let refs: Vec<&[u64]> = lists.iter().map(|l| l.as_slice()).collect();
    match union_indices(&refs).last() {
        Some(&m) if m > k => Err(Error::invalid(format!("truncation {k} is below the listed index {m}"))),
        _ => Ok(()),
    }
}

fn y_dims(x: &DObject, v: &DObject, i: Index, t: i64) -> (usize, usize) {
    let (a, b) = (x.stalk_spaces(i), v.stalk_spaces(i));
    (a.plus.hom(&b.plus).dim(t), a.minus.hom(&b.minus).dim(t))
}

/// `δ : A ⊕ ⊕_j Y_j ⊕ Y_τ -> H` in degree `t`.
fn delta(x: &DObject, v: &DObject, k: u64, t: i64) -> Matrix {
    let (alpha, beta) = alpha_beta(x, v, t);
    let mut m = beta.scale(&-crate::exactlin::rat::one());
    for j in 1..=k {
        let (p, q) = y_dims(x, v, Index::At(j), t);
        m = m.hstack(&Matrix::zeros(alpha.rows(), p + q));
    }
    m.hstack(&alpha)
}

fn wpost(f: &WMap, src: &crate::exactlin::WVec, t: i64) -> Matrix {
    postcompose(&f.plus, &src.plus, t).block_diag(&postcompose(&f.minus, &src.minus, t))
}

/// The maps induced on `S` and `H` by `f : V -> V'`.
fn induced(x: &DObject, f: &DMap, k: u64, t: i64) -> (Matrix, Matrix) {
    let mut on_s = postcompose(&f.infty, x.infty.spaces(), t);
    for i in points(k) {
        on_s = on_s.block_diag(&wpost(f.stalks.get(i), &x.stalk_spaces(i), t));
    }
    let on_h = postcompose(&f.stalks.generic().plus, x.infty.spaces(), t);
    (on_s, on_h)
}

fn degrees(x: &DObject, vs: &[&DObject], k: u64) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for v in vs {
        let mut spaces: Vec<GradedVec> = vec![
            x.infty.spaces().hom(v.infty.spaces()),
            x.infty.spaces().hom(v.generic().plus.spaces()),
        ];
        for i in points(k) {
            spaces.push(x.stalk_spaces(i).hom(&v.stalk_spaces(i)).plus);
        }
        for s in spaces {
            out.extend(s.degrees());
        }
    }
    out
}

/// `(dim Hom, dim Ext)` of the truncation, by degree.
pub fn hom_ext_truncated(x: &DObject, v: &DObject, k: u64) -> Result<BTreeMap<i64, (usize, usize)>> {
    require_graded(x, "source")?;
    require_graded(v, "target")?;
    check_truncation(&[x, v], &[], k)?;
    let mut out = BTreeMap::new();
    for t in degrees(x, &[v], k) {
        let d = delta(x, v, k, t);
        let r = d.rank();
        let entry = (d.cols() - r, d.rows() - r);
        if entry != (0, 0) {
            out.insert(t, entry);
        }
    }
    Ok(out)
}

/// Places where `Hom(X,V') -> Hom(X,V) -> Hom(X,V'') -> Ext(X,V') -> Ext(X,V) -> Ext(X,V'')`
/// fails to be exact (including injectivity on the left and surjectivity on the right),
/// for a short exact sequence `0 -> V' -f-> V -g-> V'' -> 0`.
pub fn six_term_failures(
    x: &DObject,
    f: &DMap,
    g: &DMap,
    objs: [&DObject; 3],
    k: u64,
) -> Result<Vec<(i64, &'static str)>> {
    let [v1, v2, v3] = objs;
    for (o, what) in [(x, "X"), (v1, "V'"), (v2, "V"), (v3, "V''")] {
        require_graded(o, what)?;
    }
    f.validate(v1, v2)?;
    g.validate(v2, v3)?;
    check_truncation(&[x, v1, v2, v3], &[f, g], k)?;
    const SPOTS: [&str; 6] = ["Hom(X,V')", "Hom(X,V)", "Hom(X,V'')", "Ext(X,V')", "Ext(X,V)", "Ext(X,V'')"];
    let mut bad = Vec::new();
    for t in degrees(x, &[v1, v2, v3], k) {
        let d = [delta(x, v1, k, t), delta(x, v2, k, t), delta(x, v3, k, t)];
        let (fs, fh) = induced(x, f, k, t);
        let (gs, gh) = induced(x, g, k, t);
        let z: Vec<Matrix> = d.iter().map(|m| m.kernel()).collect();
        let q: Vec<Matrix> = d.iter().map(|m| subspace::quotient_map(m.rows(), m)).collect();
        let coords = |basis: &Matrix, img: &Matrix| basis.solve_matrix(img);
        let h12 = coords(&z[1], &fs.mul(&z[0]));
        let h23 = coords(&z[2], &gs.mul(&z[1]));
        let conn = connecting(&d[1], &gs, &fh, &q[0], &z[2]);
        let e12 = section(&q[0]).map(|s| q[1].mul(&fh).mul(&s)).ok();
        let e23 = section(&q[1]).map(|s| q[2].mul(&gh).mul(&s)).ok();
        let maps = [h12, h23, conn, e12, e23];
        let dims = [z[0].cols(), z[1].cols(), z[2].cols(), q[0].rows(), q[1].rows(), q[2].rows()];
        let Some(maps) = maps.into_iter().collect::<Option<Vec<Matrix>>>() else {
            bad.push((t, "induced map does not exist"));
            continue;
        };
        if maps[0].rank() != dims[0] {
            bad.push((t, SPOTS[0]));
        }
        for s in 1..5 {
            let (into, out) = (&maps[s - 1], &maps[s]);
            let zero = into.cols() == 0 || out.rows() == 0 || out.mul(into).is_zero();
            if !zero || into.rank() + out.rank() != dims[s] {
                bad.push((t, SPOTS[s]));
            }
        }
        if maps[4].rank() != dims[5] {
            bad.push((t, SPOTS[5]));
        }
    }
    Ok(bad)
}

/// `Hom(X,V'') -> Ext(X,V')`: lift along `g`, apply `δ`, pull back along `f`.
fn connecting(d2: &Matrix, gs: &Matrix, fh: &Matrix, q1: &Matrix, z3: &Matrix) -> Option<Matrix> {
    let mut cols = Vec::new();
    for j in 0..z3.cols() {
        let s = gs.solve(&z3.col(j))?;
        let h = d2.apply(&s);
        let h1 = fh.solve(&h)?;
        cols.push(q1.apply(&h1));
    }
    Some(Matrix::from_cols(q1.rows(), &cols))
}

/// The extension of `V''` by `V'` whose structure map is `[[σ', φ], [0, σ'']]`, with
/// `φ : V''_∞ -> V'_gen^W`; returns `(V, V' -> V, V -> V'')`.
pub fn extension(v1: &DObject, v3: &DObject, phi: &GradedMap) -> Result<(DObject, DMap, DMap)> {
    let v2 = v1.direct_sum(v3);
    let mut sigma = v2.sigma.clone();
    let (a1, p1) = (v1.infty.spaces(), v1.generic().plus.spaces());
    if &phi.source != v3.infty.spaces() || &phi.target != p1 || phi.shift != 0 {
        return Err(Error::invalid("extension class has the wrong shape"));
    }
    for n in v2.infty.spaces().degrees() {
        let mut b = sigma.block(n);
        b.paste(0, a1.dim(n), &phi.block(n));
        sigma.set_block(n, b);
    }
    let v2 = DObject { sigma, ..v2 };
    v2.validate().map_err(|e| e.context("extension"))?;
    let incl = |a: &GradedVec, b: &GradedVec| crate::exactlin::cxmaps::inclusion_first(a, b);
    let proj_second = |a: &GradedVec, b: &GradedVec| {
        let mut m = GradedMap::zero(a.direct_sum(b), b.clone(), 0);
        for n in b.degrees() {
            m.set_block(n, Matrix::zeros(b.dim(n), a.dim(n)).hstack(&Matrix::identity(b.dim(n))));
        }
        m
    };
    let idx = union_indices(&[&v1.stalks.indices(), &v3.stalks.indices()]);
    let f = DMap {
        infty: incl(v1.infty.spaces(), v3.infty.spaces()),
        stalks: crate::germ::Germ::tabulate(&idx, |i| {
            let (s1, s3) = (v1.stalk_spaces(i), v3.stalk_spaces(i));
            WMap {
                plus: incl(&s1.plus, &s3.plus),
                minus: incl(&s1.minus, &s3.minus),
            }
        }),
    };
    let g = DMap {
        infty: proj_second(v1.infty.spaces(), v3.infty.spaces()),
        stalks: crate::germ::Germ::tabulate(&idx, |i| {
            let (s1, s3) = (v1.stalk_spaces(i), v3.stalk_spaces(i));
            WMap {
                plus: proj_second(&s1.plus, &s3.plus),
                minus: proj_second(&s1.minus, &s3.minus),
            }
        }),
    };
    f.validate(v1, &v2)?;
    g.validate(&v2, v3)?;
    Ok((v2, f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{ChainCx, WChainCx, WVec};
    use crate::model_d::{c, hom_ext, i_inf, i_k, sum_of_stalks, unit_d};

    fn q0() -> ChainCx {
        ChainCx::graded(GradedVec::concentrated(0, 1))
    }

    fn tail() -> DObject {
        sum_of_stalks(WChainCx::new(q0(), ChainCx::zero()))
    }

    #[test]
    fn truncation_matches_germ_form() {
        let objs = [unit_d(), i_inf(q0()), tail(), i_k(2, WChainCx::graded(&WVec::regular_power(1, 0))), c(q0()).direct_sum(&tail())];
        for x in &objs {
            for v in &objs {
                let he = hom_ext(x, v).unwrap();
                for k in [3, 6] {
                    let tr = hom_ext_truncated(x, v, k).unwrap();
                    let hom = he.hom.truncated_dims(k);
                    let ext = &he.ext;
                    for t in -2..=2 {
                        let (h, e) = tr.get(&t).copied().unwrap_or((0, 0));
                        assert_eq!(h, hom.dim(t), "hom {x:?} {v:?} at {t}");
                        assert_eq!(e, ext.dim(t), "ext {x:?} {v:?} at {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn nonsplit_extension_sequences_are_exact() {
        // 0 -> tails -> cQ -> i_∞Q -> 0 with the diagonal as extension class
        let (v2, f, g) = extension(&tail(), &i_inf(q0()), &GradedMap::identity(&GradedVec::concentrated(0, 1))).unwrap();
        assert_eq!(hom_ext(&v2, &unit_d()).unwrap().hom, hom_ext(&unit_d(), &unit_d()).unwrap().hom);
        for x in [unit_d(), i_inf(q0()), tail(), i_k(1, WChainCx::graded(&WVec::regular_power(0, 0)))] {
            let bad = six_term_failures(&x, &f, &g, [&tail(), &v2, &i_inf(q0())], 5).unwrap();
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn truncation_must_cover_listed_indices() {
        assert!(hom_ext_truncated(&i_k(9, WChainCx::zero().direct_sum(&WChainCx::graded(&WVec::trivial(GradedVec::concentrated(0, 1))))), &unit_d(), 4).is_err());
    }
}
