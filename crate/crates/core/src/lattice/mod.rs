//! Finite join-semilattice abstraction: concrete lattices, linear
//! extensions, join closures `S^{vee k}`, zeta matrices, and poset Moebius
//! functions.
//!
//! All types here are immutable after construction and every operation is a
//! pure function of its inputs, so contexts, subsets, and closures can be
//! shared freely across threads.

mod context;
mod element;
mod explicit;
mod incidence;
mod subset;
mod validate;

pub use context::JoinSemilattice;
pub use element::Element;
pub use explicit::{ExplicitPoset, JoinDefect};
pub use incidence::{moebius, zeta_matrix, IncidenceMatrix, MoebiusTable};
pub use subset::{join_closure, JoinClosure, OrderedSubset};
pub use validate::{validate_semilattice, ValidationReport, Violation};
