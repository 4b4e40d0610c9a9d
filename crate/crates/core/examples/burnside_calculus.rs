//! Idempotents of the rational Burnside ring of O(2) and their restrictions to D_2n.

use o2model::burnside::{e_c, e_d, e_n, hasse_assemble, hasse_decompose, named, restrict, DihedralBurnside};

fn main() -> o2model::Result<()> {
    let n = 6;
    let ec = restrict(&e_c(), n)?;
    println!("e_C restricted to D_{}: cyclic part {:?}", 2 * n, ec.cyclic.keys().collect::<Vec<_>>());

    let ids = DihedralBurnside::idempotents(n);
    let sum = ids.iter().fold(DihedralBurnside::zero(n), |acc, e| acc.add(e));
    println!("{} primitive idempotents, sum is one: {}", ids.len(), sum == DihedralBurnside::one(n));

    // e_C + e_D = 1, and the dihedral idempotents sit under e_D
    println!("e_C + e_D = 1: {}", e_c().add(&e_d()) == named("1")?);
    let e3 = e_n(3)?;
    println!("e_3 e_D = e_3: {}", e3.mul(&e_d()) == e3);

    let parts = hasse_decompose(&e3);
    println!("hasse corner of e_3: ({}, {})", parts.corner.0, parts.corner.1);
    println!("reassembles: {}", hasse_assemble(&parts)? == e3);
    Ok(())
}
