//! A(D) in germ form: constant sheaves, skyscrapers, and the Hom/Ext between them.

use o2model::exactlin::{ChainCx, GradedVec, WChainCx, WVec};
use o2model::model_d::{hom_ext, i_inf, i_k, sum_of_stalks, tensor_d, truncated::hom_ext_truncated, unit_d};

fn main() -> o2model::Result<()> {
    let q = ChainCx::graded(GradedVec::concentrated(0, 1));
    let u = unit_d();
    let he = hom_ext(&u, &u)?;
    println!("[cQ, cQ]: one per index (finitely many nonzero) {:?}, at infinity {:?}", he.hom.generic_sum.dims(), he.hom.infinity.dims());

    let r = WChainCx::graded(&WVec::regular_power(1, 0));
    let x = tensor_d(&i_k(2, r.clone()), &i_k(2, r));
    println!("i_2 QW ⊗ i_2 QW has stalk {:?} at 2", x.stalk_spaces(o2model::germ::Index::At(2)));

    // a point at infinity glued onto the tails is a nonsplit extension
    let tails = sum_of_stalks(WChainCx::new(q.clone(), ChainCx::zero()));
    let e = hom_ext(&i_inf(q), &tails)?;
    println!("Ext(i_inf Q, tails) = {:?}", e.ext.dims());
    for k in [3, 6] {
        println!("finite oracle at K = {k}: {:?}", hom_ext_truncated(&i_inf(ChainCx::graded(GradedVec::concentrated(0, 1))), &tails, k)?);
    }
    Ok(())
}
