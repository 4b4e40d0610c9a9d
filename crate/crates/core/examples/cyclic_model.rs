//! A(C): torus objects with a compatible W-action; maps are the W-fixed torus maps.

use o2model::euler::AdmissibleRep;
use o2model::model_c::{hom_set_c, induce_d, s0_c, CObject};
use o2model::model_t::{hom_set, rep_sphere};

fn main() -> o2model::Result<()> {
    let a = rep_sphere(&AdmissibleRep::new(vec![1])?);
    let b = CObject::equivariant(rep_sphere(&AdmissibleRep::new(vec![2])?), vec![1])?;
    let d = induce_d(&a)?;
    for t in -2..=2 {
        println!(
            "degree {t}: [DA, B]^W = {}, [A, B] = {}",
            hom_set_c(&d, &b, t)?.dim(),
            hom_set(&a, &b.base, t)?.dim()
        );
    }
    println!("[S^0, S^0]^W = {}", hom_set_c(&s0_c(), &s0_c(), 0)?.dim());
    Ok(())
}
