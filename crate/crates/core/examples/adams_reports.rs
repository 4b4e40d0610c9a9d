//! Hom and Ext terms of the Adams sequences, dihedral and cyclic.

use o2model::adams::{adams_cyclic_hom, adams_dihedral};
use o2model::exactlin::{ChainCx, GradedVec, WChainCx};
use o2model::format::{adams_doc, print, render_text, Document};
use o2model::model_c::s0_c;
use o2model::model_d::{i_inf, sum_of_stalks};

fn main() -> o2model::Result<()> {
    let q = ChainCx::graded(GradedVec::concentrated(0, 1));
    let tails = sum_of_stalks(WChainCx::new(q.clone(), ChainCx::zero()));
    let r = adams_dihedral(&i_inf(q).shift(-1), &tails)?;
    print!("{}", render_text(&Document::Adams(adams_doc(&r))));

    let c = adams_cyclic_hom(&s0_c(), &s0_c(), -2, 2)?;
    print!("{}", print(&Document::Adams(adams_doc(&c))));
    Ok(())
}
