//! Euler classes of representations, and spheres in the torus model.

use o2model::euler::{dimension_function, euler_mul, is_fg_projective, rep_sphere_module, AdmissibleRep};

fn main() -> o2model::Result<()> {
    let v = AdmissibleRep::new(vec![1, 2])?;
    let w = AdmissibleRep::new(vec![3])?;
    let cv = dimension_function(&v);
    let cw = dimension_function(&w);
    let both = dimension_function(&v.direct_sum(&w));
    println!("c^V = {:?}", cv);
    println!("c^V c^W = c^(V+W): {}", euler_mul(&cv, &cw) == both);

    let m = rep_sphere_module(&v);
    println!("nub of S^V projective: {}", is_fg_projective(&m)?.projective);
    Ok(())
}
