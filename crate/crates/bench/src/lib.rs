//! Fixture builders shared by the benchmarks.

use jointensor_core::{Element, JoinSemilattice, OrderedSubset};

/// `S = {1..n}` in the divisor lattice — the LCM tensor family.
pub fn lcm_range(n: u64) -> OrderedSubset {
    let ctx = JoinSemilattice::divisor();
    OrderedSubset::linear_extension(ctx, (1..=n).map(Element::int)).expect("valid range")
}
