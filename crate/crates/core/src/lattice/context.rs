//! Join-semilattice contexts: the divisor lattice, the max chain, and
//! explicit finite posets.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::element::Element;
use crate::lattice::explicit::ExplicitPoset;

/// A join semilattice: an order predicate plus a total join operation.
///
/// `Divisor` is `(Z_+, |, lcm)`, `MaxChain` is `(Z_{>=0}, <=, max)`, and
/// `Explicit` wraps a finite poset with a derived (or supplied) join table.
/// Contexts are immutable and shared behind `Arc`.
#[derive(Debug, PartialEq, Eq)]
pub enum JoinSemilattice {
    Divisor,
    MaxChain,
    Explicit(ExplicitPoset),
}

impl JoinSemilattice {
    pub fn divisor() -> Arc<Self> {
        Arc::new(JoinSemilattice::Divisor)
    }

    pub fn max_chain() -> Arc<Self> {
        Arc::new(JoinSemilattice::MaxChain)
    }

    /// Wrap an explicit poset, failing fast when its join table has defects.
    pub fn explicit(poset: ExplicitPoset) -> Result<Arc<Self>> {
        if let Some(defect) = poset.defects().first() {
            return Err(Error::NotASemilattice(defect.to_string()));
        }
        Ok(Arc::new(JoinSemilattice::Explicit(poset)))
    }

    /// Wrap an explicit poset without insisting on a defect-free join table.
    /// Joins at defective pairs return `NotASemilattice`; this is the entry
    /// point for running candidates through `validate_semilattice`.
    pub fn explicit_lenient(poset: ExplicitPoset) -> Arc<Self> {
        Arc::new(JoinSemilattice::Explicit(poset))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            JoinSemilattice::Divisor => "divisor",
            JoinSemilattice::MaxChain => "max-chain",
            JoinSemilattice::Explicit(_) => "explicit",
        }
    }

    /// Check that `x` denotes an element of this lattice.
    pub fn check_member(&self, x: &Element) -> Result<()> {
        match self {
            JoinSemilattice::Divisor => match x {
                Element::Int(v) if !v.is_zero() => Ok(()),
                other => Err(Error::UnknownElement(format!(
                    "{other} (divisor lattice elements are positive integers)"
                ))),
            },
            JoinSemilattice::MaxChain => match x {
                Element::Int(_) => Ok(()),
                other => Err(Error::UnknownElement(format!(
                    "{other} (max-chain elements are non-negative integers)"
                ))),
            },
            JoinSemilattice::Explicit(p) => p.member_index(x).map(|_| ()),
        }
    }

    /// The order predicate `x <= y`.
    pub fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        self.check_member(x)?;
        self.check_member(y)?;
        match self {
            JoinSemilattice::Divisor => match (x, y) {
                (Element::Int(a), Element::Int(b)) => Ok((b % a).is_zero()),
                _ => unreachable!("checked above"),
            },
            JoinSemilattice::MaxChain => match (x, y) {
                (Element::Int(a), Element::Int(b)) => Ok(a <= b),
                _ => unreachable!("checked above"),
            },
            JoinSemilattice::Explicit(p) => p.leq_elems(x, y),
        }
    }

    /// The join `x v y` (least upper bound).
    pub fn join(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_member(x)?;
        self.check_member(y)?;
        match self {
            JoinSemilattice::Divisor => match (x, y) {
                (Element::Int(a), Element::Int(b)) => Ok(Element::Int(a.lcm(b))),
                _ => unreachable!("checked above"),
            },
            JoinSemilattice::MaxChain => match (x, y) {
                (Element::Int(a), Element::Int(b)) => Ok(Element::Int(a.max(b).clone())),
                _ => unreachable!("checked above"),
            },
            JoinSemilattice::Explicit(p) => p.join_elems(x, y),
        }
    }
}
