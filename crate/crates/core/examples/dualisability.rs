//! Dualisable objects have projective nub; the dual of a sphere is the sphere of -V.

use o2model::euler::{BaseRing, FpModule, QcPresentation};
use o2model::exactlin::Matrix;
use o2model::germ::{Germ, Index};
use o2model::model_t::{dual, is_dualisable, make_t, rep_sphere, s0, tensor_t};
use o2model::euler::AdmissibleRep;

fn main() -> o2model::Result<()> {
    let sv = rep_sphere(&AdmissibleRep::new(vec![1, 2])?);
    println!("S^V dualisable: {}", is_dualisable(&sv)?);
    let d = dual(&sv)?;
    let pos = [Index::At(1), Index::At(2), Index::Generic];
    let unit = tensor_t(&sv, &d)?;
    println!("S^V ⊗ D(S^V) looks like S^0: {}", unit.profile(&pos, -6, 6) == s0().profile(&pos, -6, 6));

    // a torsion module concentrated at one subgroup is not
    let t = FpModule::new(BaseRing::OF, Germ::single(1, QcPresentation::cyclic_torsion(0, 1), QcPresentation::zero()))?;
    let e = make_t(&t, vec![], &t.comps.map(|p| Matrix::zeros(0, p.ngens())))?;
    println!("torsion object dualisable: {}", is_dualisable(&e)?);
    Ok(())
}
