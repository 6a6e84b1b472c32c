//! Contraction kernels, unfolding matrices, exact and numeric rank, and the
//! closure-cardinality rank bounds.

mod bounds;
mod contract;
mod matrix;
mod unfold;

pub use bounds::{
    check_coefficient_assumption, lcm_tt_rank_reference, rank_bounds, AssumptionCheck,
    RankBoundReport, DEFAULT_COEFF_TOL,
};
pub use contract::Contractor;
pub use matrix::{exact_rank, numeric_rank, Matrix, TolerancePolicy};
pub use unfold::{unfolding, UnfoldingMatrix};
