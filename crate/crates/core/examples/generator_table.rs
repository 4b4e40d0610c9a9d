//! Maps between the generators cQ and i_k QW^i of A(D).

use o2model::adams::generator_table;

fn main() -> o2model::Result<()> {
    let lines = generator_table(3)?;
    for l in &lines {
        println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.label, l.computed);
    }
    Ok(())
}
