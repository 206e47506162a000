//! High-precision evaluation of Sudler products
//! `P_n(alpha) = prod_{r=1}^n |2 sin(pi r alpha)|` and the experiments
//! built around them: subsequence limits along convergent denominators,
//! extrema evolution, Ostrowski expansions and the digit-wise upper bound.

pub mod analysis;
pub mod cf;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod ostrowski;
pub mod precision;
pub mod sudler;

pub use error::{Error, Result};
