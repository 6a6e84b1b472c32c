//! Explicit polyadic and tensor-train decompositions of join tensors over
//! finite join semilattices, with exact unfolding-rank verification and
//! dominant tensor-eigenvalue estimation.
//!
//! A join tensor has entries `f(x_{i_1} v ... v x_{i_d})` for a subset
//! `S = {x_1, ..., x_n}` of a join semilattice and a scalar valuation `f`.
//! The classic example is the LCM tensor: `S = {1..n}` in the divisor
//! lattice with `f` the identity. Both decompositions here are explicit and
//! exact — no iterative fitting — and their sizes are governed by the join
//! closures `S^{vee k}`.
//!
//! The crate is organized as:
//! - [`lattice`]: semilattice contexts, linear extensions, join closures,
//!   zeta matrices, and Moebius functions;
//! - [`decomp`]: the polyadic and tensor-train builders, the dense oracle,
//!   and symmetric-part storage;
//! - [`ops`]: contractions, unfoldings, exact (fraction-free) and numeric
//!   rank, and closure-based rank bounds;
//! - [`eigen`]: the bracketing power method and Gerschgorin-type region.
//!
//! Everything is generic over [`scalar::Scalar`], instantiated at exact
//! rationals or `f64`; a build never mixes the two.

pub mod decomp;
pub mod eigen;
pub mod error;
pub mod lattice;
pub mod ops;
pub mod scalar;
pub mod valuation;

pub use decomp::{
    DEFAULT_DENSE_GUARD,
    build_cp, build_tt, materialize_dense, materialize_dense_guarded, multiset_count,
    symmetric_part, symmetric_storage, DenseTensor, PolyadicDecomposition, StorageReport,
    SymmetricPart, TensorTrain,
};
pub use eigen::{
    bound_check, gerschgorin_bound, power_method, EigenEstimate, GerschgorinRegion, PowerConfig,
};
pub use error::{Error, Result};
pub use lattice::{
    join_closure, moebius, validate_semilattice, zeta_matrix, Element, ExplicitPoset,
    IncidenceMatrix, JoinClosure, JoinSemilattice, MoebiusTable, OrderedSubset,
};
pub use ops::{
    check_coefficient_assumption, exact_rank, lcm_tt_rank_reference, numeric_rank, rank_bounds,
    unfolding, Contractor, Matrix, RankBoundReport, UnfoldingMatrix,
};
pub use scalar::{ArithMode, Scalar};
pub use valuation::{Valuation, ValuationTable};

/// Exact-mode scalar type.
pub type Exact = num_rational::BigRational;
