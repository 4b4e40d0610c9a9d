//! Assembling an object of `A(D)` from homotopy of fixed points.
//!
//! The stalk at `k` is the graded `Q[W]`-module `P_k` coming from the subgroup `D_{2k}`.
//! The part at infinity is the colimit of the corner levels `f_n π_*^{O(2)}`, each mapping
//! to `P_k` for `k >= n`; the data is eventually constant so the last level is the colimit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{ChainCx, GradedMap, GradedVec, WChainCx, WVec};
use crate::germ::Germ;

use super::DObject;

/// One corner level `f_n π_*^{O(2)}` with its maps into the fixed parts of the stalks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerLevel {
    pub n: u64,
    pub space: GradedVec,
    /// To the next level; absent on the last one.
    pub next: Option<GradedMap>,
    /// To `P_k^W` for listed `k >= n`.
    pub to_stalks: BTreeMap<u64, GradedMap>,
    /// To `P_gen^W`.
    pub to_generic: GradedMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiData {
    pub stalks: Germ<WVec>,
    pub corner: Vec<CornerLevel>,
}

fn check_shape(m: &GradedMap, src: &GradedVec, tgt: &GradedVec, what: &str) -> Result<()> {
    if &m.source != src || &m.target != tgt || m.shift != 0 {
        return Err(Error::invalid(format!("{what} has the wrong shape")));
    }
    Ok(())
}

pub fn assemble_pi(data: &PiData) -> Result<DObject> {
    let stalks = &data.stalks;
    let gen_fixed = stalks.generic().plus.clone();
    for (j, level) in data.corner.iter().enumerate() {
        let ctx = |e: Error| e.context(format!("corner level {}", level.n));
        check_shape(&level.to_generic, &level.space, &gen_fixed, "map to the generic stalk").map_err(ctx)?;
        for (&k, m) in &level.to_stalks {
            if k < level.n {
                return Err(ctx(Error::invalid(format!("map to stalk {k} below the level"))));
            }
            check_shape(m, &level.space, &stalks.at(k).plus, &format!("map to stalk {k}")).map_err(ctx)?;
        }
        let Some(nxt) = data.corner.get(j + 1) else {
            if level.next.is_some() {
                return Err(ctx(Error::invalid("last level has a transition map")));
            }
            continue;
        };
        if nxt.n <= level.n {
            return Err(ctx(Error::invalid("levels must increase")));
        }
        let t = level.next.as_ref().ok_or_else(|| ctx(Error::invalid("missing transition map")))?;
        check_shape(t, &level.space, &nxt.space, "transition map").map_err(ctx)?;
        if nxt.to_generic.compose(t) != level.to_generic {
            return Err(ctx(Error::invalid("corner maps to the generic stalk are incompatible")));
        }
        for (&k, m) in &nxt.to_stalks {
            if let Some(mine) = level.to_stalks.get(&k) {
                if &m.compose(t) != mine {
                    return Err(ctx(Error::invalid(format!("corner maps to stalk {k} are incompatible"))));
                }
            }
        }
    }
    let out = match data.corner.last() {
        Some(last) => DObject {
            stalks: stalks.map(WChainCx::graded),
            infty: ChainCx::graded(last.space.clone()),
            sigma: last.to_generic.clone(),
        },
        None => DObject {
            stalks: stalks.map(WChainCx::graded),
            infty: ChainCx::zero(),
            sigma: GradedMap::zero(GradedVec::zero(), gen_fixed, 0),
        },
    };
    out.validate()?;
    Ok(out)
}
