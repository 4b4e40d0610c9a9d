//! Exact algebraic models for rational O(2)-equivariant stable homotopy.

pub mod adams;
pub mod burnside;
pub mod cli;
pub mod error;
pub mod euler;
pub mod exactlin;
pub mod format;
pub mod germ;
pub mod model_c;
pub mod model_d;
pub mod model_t;

pub use error::{Error, Result};
