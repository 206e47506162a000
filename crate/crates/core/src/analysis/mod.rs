//! Numerical experiments on Sudler products: convergence along convergent
//! denominators, evolution of extrema, the Fibonacci sandwich, the digit-wise
//! upper bound and the threshold it implies.

mod bound;
mod extrema;
mod subseq;
mod threshold;

pub use bound::{log_product_bound, BoundBreakdown};
pub use extrema::{
    conjecture_probe, extrema_evolution, growth_exponent, sandwich_check, ConjectureClass,
    ConjectureProbe, ExtremumKind, ExtremumRecord, GrowthReport, SandwichSide, SandwichViolation,
};
pub use subseq::{
    subsequence_limits, SubseqLimitReport, SubseqOptions, SubseqSample, DEFAULT_N_BUDGET,
};
pub use threshold::{floor_exp, threshold_k, threshold_k_of, threshold_predicate, THRESHOLD_CONSTANT};
