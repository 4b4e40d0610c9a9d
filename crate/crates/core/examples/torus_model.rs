//! Objects of A(T): spheres, tensor products and maps.

use o2model::euler::AdmissibleRep;
use o2model::germ::Index;
use o2model::model_t::{hom_set, rep_sphere, s0, tensor_t};

fn main() -> o2model::Result<()> {
    let v = AdmissibleRep::new(vec![1])?;
    let sv = rep_sphere(&v);
    let s2v = tensor_t(&sv, &sv)?;
    let pos = [Index::At(1), Index::At(2), Index::Generic];
    println!("S^V ⊗ S^V profile on [-6, 6]: {:?}", s2v.profile(&pos, -6, 6));

    for t in -4..=4 {
        let d = hom_set(&s0(), &sv, t)?.dim();
        if d > 0 {
            println!("[S^0, S^V]_{t} has dimension {d}");
        }
    }
    Ok(())
}
