//! Tensor products, function objects and duals in `A(T)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::{is_fg_projective, BaseRing, QcPresentation};
use crate::exactlin::{Matrix, Ring};
use crate::germ::Index;

use super::{join_ring, s0, TObject, TPart};

/// `(N ⊗ P -> E⁻¹O_F ⊗ V ⊗ W, β ⊗ β')`; vertex pairs are ordered with the left factor major.
pub fn tensor_t(a: &TObject, b: &TObject) -> Result<TObject> {
    let vertex = a.vertex.iter().flat_map(|v| b.vertex.iter().map(move |w| v + w)).collect();
    let parts = a.parts.zip(&b.parts, |x, y| TPart {
        nub: x.nub.tensor(&y.nub),
        beta: x.beta.kron(&y.beta),
    });
    let out = TObject {
        ring: join_ring(a.ring, b.ring),
        vertex,
        parts,
    };
    out.validate().map_err(|e| e.context("tensor product"))?;
    Ok(out)
}

/// `F(A, B)`: nub `hom_{O_F}(N, P)` with the structure map `f ↦ β_B ∘ f ∘ β_A⁻¹`.
///
/// The nub is assembled from cyclic decompositions at each position:
/// `Hom(Σ^a Q[c], P) = Σ^{-a} P` and `Hom(Σ^b Q[c]/c^m, P) = Σ^{-b} P[c^m]`.
/// Vertex pairs `u_l^* ⊗ w_p` are ordered with `l` major.
pub fn function_object(a: &TObject, b: &TObject) -> Result<TObject> {
    if a.ring != BaseRing::OF {
        return Err(Error::unsupported("function objects out of a localized nub"));
    }
    let nb = b.vertex.len();
    let mut vertex = Vec::new();
    for &v in &a.vertex {
        for &w in &b.vertex {
            vertex.push(w - v);
        }
    }
    let parts = a.parts.try_zip(&b.parts, |i, x, y| hom_part(a, b, i, x, y, nb))?;
    let out = TObject {
        ring: b.ring,
        vertex,
        parts,
    };
    out.validate().map_err(|e| e.context("function object"))?;
    Ok(out)
}

fn hom_part(a: &TObject, b: &TObject, i: Index, x: &TPart, y: &TPart, nb: usize) -> Result<TPart> {
    let dec = x.nub.decompose(Ring::Poly)?;
    let free_cols = dec.basis.m.select_cols(&dec.free);
    let b_free = x.beta.mul(&free_cols);
    let b_inv = b_free.inverse().ok_or_else(|| {
        Error::defect(format!("structure map of a valid object is not invertible on free summands at {i}"))
    })?;
    let (ps, incl) = y.nub.simplify(b.nub_ring(i))?;
    let beta_p = y.beta.mul(&incl.m);
    let nfree_p = ps.ngens() - ps.rels.len();
    let order = |q: usize| -> Option<i64> { (q >= nfree_p).then(|| (ps.gens[q] - ps.rels[q - nfree_p]) / 2) };
    let na = a.vertex.len();
    let mut gens = Vec::new();
    let mut rels: Vec<(usize, i64)> = Vec::new();
    let mut beta_cols = Vec::new();
    for (ai, &t) in dec.free.iter().enumerate() {
        let ga = x.nub.gens[t];
        for q in 0..ps.ngens() {
            let g = ps.gens[q] - ga;
            if let Some(r) = order(q) {
                rels.push((gens.len(), g - 2 * r));
            }
            gens.push(g);
            let mut col = vec![crate::exactlin::rat::zero(); na * nb];
            for l in 0..na {
                let s = b_inv.get(ai, l);
                if s.is_zero() {
                    continue;
                }
                for p in 0..nb {
                    col[l * nb + p] = s * beta_p.get(p, q);
                }
            }
            beta_cols.push(col);
        }
    }
    for &(t, m) in &dec.torsion {
        let gb = x.nub.gens[t];
        for q in nfree_p..ps.ngens() {
            let r = order(q).expect("torsion generator");
            let g = ps.gens[q] - 2 * (r - m).max(0) - gb;
            rels.push((gens.len(), g - 2 * r.min(m)));
            gens.push(g);
            beta_cols.push(vec![crate::exactlin::rat::zero(); na * nb]);
        }
    }
    let mut matrix = Matrix::zeros(gens.len(), rels.len());
    for (j, &(g, _)) in rels.iter().enumerate() {
        matrix.set(g, j, crate::exactlin::rat::one());
    }
    let nub = QcPresentation::new(gens.clone(), rels.iter().map(|r| r.1).collect(), matrix);
    Ok(TPart {
        nub,
        beta: Matrix::from_cols(na * nb, &beta_cols),
    })
}

/// `DA = F(A, S⁰)`.
pub fn dual(a: &TObject) -> Result<TObject> {
    function_object(a, &s0())
}

/// Dualisable objects are exactly those with finitely generated projective nub.
pub fn is_dualisable(a: &TObject) -> Result<bool> {
    if a.ring != BaseRing::OF {
        return Ok(false);
    }
    Ok(is_fg_projective(&a.nub())?.projective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{AdmissibleRep, FpModule};
    use crate::germ::Germ;
    use crate::model_t::{hom_set, make_t, rep_sphere};

    fn torsion_object(k: u64, m: i64) -> TObject {
        let t = FpModule::new(
            BaseRing::OF,
            Germ::single(k, QcPresentation::cyclic_torsion(0, m), QcPresentation::zero()),
        )
        .unwrap();
        make_t(&t, vec![], &t.comps.map(|p| Matrix::zeros(0, p.ngens()))).unwrap()
    }

    #[test]
    fn sphere_duals() {
        let v = AdmissibleRep::new(vec![2]).unwrap();
        let d = dual(&rep_sphere(&v)).unwrap();
        let want = rep_sphere(&v).sigma_rep(&v, false).sigma_rep(&v, false);
        for i in [Index::At(1), Index::At(2), Index::At(3), Index::Generic] {
            assert_eq!(d.part(i).nub.gens, want.part(i).nub.gens, "{i}");
        }
        let dd = dual(&d).unwrap();
        assert_eq!(dd.profile(&[Index::At(1), Index::Generic], -6, 6), rep_sphere(&v).profile(&[Index::At(1), Index::Generic], -6, 6));
    }

    #[test]
    fn unit_laws() {
        let v = AdmissibleRep::new(vec![1, 3]).unwrap();
        let a = rep_sphere(&v);
        let t = tensor_t(&s0(), &a).unwrap();
        assert_eq!(t.profile(&[Index::At(1), Index::At(3), Index::Generic], -8, 8), a.profile(&[Index::At(1), Index::At(3), Index::Generic], -8, 8));
        let f = function_object(&s0(), &a).unwrap();
        assert_eq!(f.part(Index::At(1)).nub.gens, a.part(Index::At(1)).nub.gens);
    }

    #[test]
    fn torsion_is_not_dualisable() {
        let e = torsion_object(1, 1);
        assert!(!is_dualisable(&e).unwrap());
        assert!(is_dualisable(&s0()).unwrap());
        // F(e, S^0) = 0 but F(e, e) ≠ 0
        let d = dual(&e).unwrap();
        assert!(d.nub().is_zero().unwrap());
        let f = function_object(&e, &e).unwrap();
        assert_eq!(f.part(Index::At(1)).nub.dim(0, Ring::Poly), 1);
        assert_eq!(hom_set(&s0(), &f, 0).unwrap().dim(), hom_set(&e, &e, 0).unwrap().dim());
    }
}
