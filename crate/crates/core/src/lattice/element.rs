//! Lattice elements and their canonical keys.

use std::fmt;

use num_bigint::BigUint;

/// An element of a join semilattice, identified by a canonical key.
///
/// Built-in lattices (divisor, max-chain) use arbitrary-precision
/// non-negative integer keys; explicit posets use opaque string names.
/// The derived total order doubles as the deterministic display order
/// used to break ties between incomparable elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Element {
    Int(BigUint),
    Name(String),
}

impl Element {
    pub fn int(v: u64) -> Self {
        Element::Int(BigUint::from(v))
    }

    pub fn big(v: BigUint) -> Self {
        Element::Int(v)
    }

    pub fn name(s: impl Into<String>) -> Self {
        Element::Name(s.into())
    }

    /// Numeric value of the key, if any. Names that parse as base-10
    /// integers count as numeric so that the `identity` valuation works on
    /// explicit posets labeled with numbers.
    pub fn numeric(&self) -> Option<BigUint> {
        match self {
            Element::Int(v) => Some(v.clone()),
            Element::Name(s) => s.parse().ok(),
        }
    }

    /// Canonical textual form: decimal digits for integers, the raw name
    /// otherwise. Used as the lookup key in valuation tables.
    pub fn canonical(&self) -> String {
        match self {
            Element::Int(v) => v.to_string(),
            Element::Name(s) => s.clone(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Name(s) => f.write_str(s),
        }
    }
}
