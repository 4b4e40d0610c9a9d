//! Hom sets in `A(T)` by one linear system per degree.
//!
//! Unknowns are the vertex map `Φ`, a nub map `Θ_i` at every germ position, and a
//! matrix `Λ_i` witnessing that `Θ_i` respects relations (`Θ_i M_i = M'_i Λ_i`).
//! Commutation with the structure maps is `β'_i Θ_i = Φ β_i`. Maps whose nub images
//! lie in the relations and whose vertex part vanishes are zero; the hom space is the
//! quotient by them. Because `β` is a lattice isomorphism generically, one unknown per
//! position describes the infinitely many generic components exactly.

use crate::error::Result;
use crate::exactlin::linsys::LinSys;
use crate::exactlin::matrix::subspace;
use crate::exactlin::rat::one;
use crate::exactlin::{Matrix, Rat};
use crate::germ::{union_indices, Germ, Index};

use super::{map_ring, TMap, TObject};

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub degree: i64,
    /// Representatives of a basis of the hom space.
    pub basis: Vec<TMap>,
    positions: Vec<Index>,
    shapes: Vec<(usize, usize)>,
    phi_shape: (usize, usize),
    /// Flattened zero maps followed by the flattened basis.
    spanning: Matrix,
    nzero: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn flatten(&self, f: &TMap) -> Vec<Rat> {
        flatten_map(f, &self.positions, &self.shapes, self.phi_shape)
    }

    /// Coordinates of a map in the chosen basis, or `None` if it is not a map of this space.
    pub fn coordinates(&self, f: &TMap) -> Option<Vec<Rat>> {
        if f.degree != self.degree {
            return None;
        }
        let x = self.spanning.solve(&self.flatten(f))?;
        Some(x[self.nzero..].to_vec())
    }

    /// The map with the given coordinates.
    pub fn element(&self, coords: &[Rat]) -> TMap {
        let mut out: Option<TMap> = None;
        for (b, c) in self.basis.iter().zip(coords) {
            let term = b.scale(c);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
        out.unwrap_or_else(|| self.basis_zero())
    }

    fn basis_zero(&self) -> TMap {
        let idx: Vec<u64> = self
            .positions
            .iter()
            .filter_map(|i| match i {
                Index::At(k) => Some(*k),
                Index::Generic => None,
            })
            .collect();
        let shapes = self.shapes.clone();
        let positions = self.positions.clone();
        TMap {
            degree: self.degree,
            theta: Germ::tabulate(&idx, |i| {
                let p = positions.iter().position(|&q| q == i).unwrap();
                Matrix::zeros(shapes[p].0, shapes[p].1)
            }),
            phi: Matrix::zeros(self.phi_shape.0, self.phi_shape.1),
        }
    }
}

fn flatten_map(f: &TMap, positions: &[Index], shapes: &[(usize, usize)], phi_shape: (usize, usize)) -> Vec<Rat> {
    let mut out = Vec::new();
    for (p, &i) in positions.iter().enumerate() {
        let m = f.theta.get(i);
        let (r, c) = shapes[p];
        assert_eq!((m.rows(), m.cols()), (r, c), "nub map has the wrong shape at {i}");
        for x in 0..r {
            out.extend(m.row(x));
        }
    }
    assert_eq!((f.phi.rows(), f.phi.cols()), phi_shape, "vertex map has the wrong shape");
    for x in 0..phi_shape.0 {
        out.extend(f.phi.row(x));
    }
    out
}

/// `Hom(A, B)` in degree `t`.
pub fn hom_set(a: &TObject, b: &TObject, t: i64) -> Result<HomSpace> {
    let idx = union_indices(&[&a.indices(), &b.indices()]);
    let positions: Vec<Index> = idx.iter().map(|&k| Index::At(k)).chain([Index::Generic]).collect();
    let mut sys = LinSys::new();
    let (nva, nvb) = (a.vertex.len(), b.vertex.len());
    let phi = sys.block(nvb, nva, |l, m| b.vertex[l] == a.vertex[m] + t);
    let neg = -one();
    let mut thetas = Vec::new();
    let mut shapes = Vec::new();
    let mut zero_cols: Vec<(usize, Matrix)> = Vec::new();
    for (p, &i) in positions.iter().enumerate() {
        let (sp, tp) = (&a.part(i).nub, &b.part(i).nub);
        let ring = map_ring(a.nub_ring(i), b.nub_ring(i));
        let ok = |x: i64| ring.is_some_and(|r| r.allows(x));
        let th = sys.block(tp.ngens(), sp.ngens(), |x, y| ok(tp.gens[x] - (sp.gens[y] + t)));
        let lam = sys.block(tp.rels.len(), sp.rels.len(), |x, y| ok(tp.rels[x] - (sp.rels[y] + t)));
        let neg_m = tp.matrix.scale(&neg);
        sys.equation(
            &[(th, None, Some(&sp.matrix)), (lam, Some(&neg_m), None)],
            &Matrix::zeros(tp.ngens(), sp.rels.len()),
        );
        let neg_beta = a.part(i).beta.scale(&neg);
        sys.equation(
            &[(th, Some(&b.part(i).beta), None), (phi, None, Some(&neg_beta))],
            &Matrix::zeros(nvb, sp.ngens()),
        );
        thetas.push(th);
        shapes.push((tp.ngens(), sp.ngens()));
        // maps into the relations: Θ = M' Ξ
        for x in 0..tp.rels.len() {
            for y in 0..sp.ngens() {
                if ok(tp.rels[x] - (sp.gens[y] + t)) {
                    let mut m = Matrix::zeros(tp.ngens(), sp.ngens());
                    for g in 0..tp.ngens() {
                        m.set(g, y, tp.matrix.get(g, x).clone());
                    }
                    zero_cols.push((p, m));
                }
            }
        }
    }
    let phi_shape = (nvb, nva);
    let sol = sys.solve().expect("homogeneous systems are solvable");
    let flat_len: usize = shapes.iter().map(|(r, c)| r * c).sum::<usize>() + nvb * nva;
    let make = |theta_of: &dyn Fn(usize) -> Matrix, phi_m: Matrix| -> TMap {
        TMap {
            degree: t,
            theta: Germ::tabulate(&idx, |i| {
                let p = positions.iter().position(|&q| q == i).unwrap();
                theta_of(p)
            }),
            phi: phi_m,
        }
    };
    let mut zero_flat: Vec<Vec<Rat>> = Vec::new();
    for (p, m) in &zero_cols {
        let f = make(
            &|q| if q == *p { m.clone() } else { Matrix::zeros(shapes[q].0, shapes[q].1) },
            Matrix::zeros(nvb, nva),
        );
        zero_flat.push(flatten_map(&f, &positions, &shapes, phi_shape));
    }
    let zero_span = subspace::basis(&Matrix::from_cols(flat_len, &zero_flat));
    let nzero = zero_span.cols();
    let mut spanning = zero_span;
    let mut basis = Vec::new();
    if sys.nvars() > 0 {
        for j in 0..sol.kernel.cols() {
            let x = sol.kernel.col(j);
            let f = make(&|q| sys.extract(thetas[q], &x), sys.extract(phi, &x));
            let v = flatten_map(&f, &positions, &shapes, phi_shape);
            let trial = spanning.hstack(&Matrix::from_cols(flat_len, &[v]));
            if trial.rank() > spanning.rank() {
                spanning = trial;
                basis.push(f);
            }
        }
    }
    Ok(HomSpace {
        degree: t,
        basis,
        positions,
        shapes,
        phi_shape,
        spanning,
        nzero,
    })
}

/// Degrees outside this window carry no maps.
pub fn hom_window(a: &TObject, b: &TObject) -> Option<(i64, i64)> {
    let (alo, ahi) = a.degree_range()?;
    let (blo, bhi) = b.degree_range()?;
    Some((blo - ahi - 2, bhi - alo + 2))
}
