//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a semilattice: {0}")]
    NotASemilattice(String),
    #[error("unknown element `{0}` in this lattice")]
    UnknownElement(String),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("missing valuation for element `{0}`")]
    MissingValuation(String),
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("index {idx:?} out of range for an order-{d} tensor of dimension {n}")]
    BadIndex { idx: Vec<usize>, n: usize, d: usize },
    #[error("dense size guard exceeded: {0}")]
    TooLarge(String),
    #[error("tensor is not symmetric: entry {0:?} differs from its sorted permutation")]
    NotSymmetric(Vec<usize>),
    #[error("shape mismatch: {0}")]
    BadShape(String),
    #[error("bad unfolding split k={k}: expected 1 <= k <= {max}")]
    BadSplit { k: usize, max: usize },
    #[error("non-finite value: {0}")]
    BadValue(String),
    #[error("bad order: {0}")]
    BadOrder(String),
    #[error("tensor has a nonpositive entry: {0}")]
    NotPositive(String),
    #[error("order {0} is odd; the bracket theory covers even order (set allow_odd to override)")]
    OddOrder(usize),
    #[error("operands belong to different lattice contexts")]
    ContextMismatch,
    #[error("arithmetic mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: &'static str, found: String },
    #[error("failed to parse {what}: {detail}")]
    Parse { what: String, detail: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
