//! Rank-bound calculators built on closure cardinalities, and the
//! coefficient-nonvanishing check they hinge on.

use crate::decomp::build_cp;
use crate::error::{Error, Result};
use crate::lattice::{join_closure, Element, JoinSemilattice, OrderedSubset};
use crate::scalar::{ArithMode, Scalar};
use crate::valuation::Valuation;

/// Default absolute tolerance for calling a float coefficient nonzero.
pub const DEFAULT_COEFF_TOL: f64 = 1e-12;

/// Result of testing that every polyadic coefficient is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssumptionCheck {
    pub holds: bool,
    /// True when the test ran in float mode against a tolerance rather than
    /// exactly.
    pub approximate: bool,
}

/// True iff every coefficient `c_k` of the order-`d` polyadic decomposition
/// is nonzero. Exact mode tests exactly; float mode compares `|c_k|` against
/// `tol` and flags the result as approximate.
pub fn check_coefficient_assumption<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
    tol: f64,
) -> Result<AssumptionCheck> {
    let cp = build_cp::<T>(s, f, d)?;
    let approximate = T::mode() == ArithMode::Float;
    let holds = cp.coefficients().iter().all(|c| {
        if approximate {
            c.to_f64().abs() > tol
        } else {
            !c.is_zero()
        }
    });
    Ok(AssumptionCheck { holds, approximate })
}

/// Bounds on the TT-rank (and, in the equality regime, the CP/symmetric
/// rank) of `[S_d]_f` from closure cardinalities.
#[derive(Debug, Clone)]
pub struct RankBoundReport {
    pub n: usize,
    pub d: usize,
    /// `max(1, 2 #S^{v floor(d/2)} - #S^{v d})`; the unclamped value can be
    /// nonpositive for sparse closures, and a nonzero tensor has rank >= 1.
    pub lower: usize,
    /// `#S^{v floor(d/2)}`.
    pub upper: usize,
    pub assumption: AssumptionCheck,
    /// True when `n <= floor(d/2)`, in which case lower == upper and the
    /// common value is also the CP and symmetric rank.
    pub equality_case: bool,
    pub half_closure_size: usize,
    pub full_closure_size: usize,
    /// Exact TT-rank (max unfolding rank), when a caller verified it.
    pub exact_rank: Option<usize>,
}

/// Compute the rank bounds. The assumption check is performed first and the
/// bounds are reported regardless, carrying the flag.
pub fn rank_bounds<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
) -> Result<RankBoundReport> {
    if d < 2 {
        return Err(Error::BadOrder(format!("tensor order must be >= 2, got {d}")));
    }
    let assumption = check_coefficient_assumption::<T>(s, f, d, DEFAULT_COEFF_TOL)?;
    let half = join_closure(s, d / 2)?.len();
    let full = join_closure(s, d)?.len();
    let lower = (2 * half).saturating_sub(full).max(1);
    let n = s.len();
    Ok(RankBoundReport {
        n,
        d,
        lower,
        upper: half,
        assumption,
        equality_case: n <= d / 2,
        half_closure_size: half,
        full_closure_size: full,
        exact_rank: None,
    })
}

/// Reference TT-rank of the LCM tensor on `S = {1..n}`: `n` when `d = 3`,
/// otherwise the number of products of `floor(d/2)` pairwise-coprime factors
/// in `1..=n` — which is exactly `#S^{v floor(d/2)}` on the divisor lattice.
pub fn lcm_tt_rank_reference(n: usize, d: usize) -> Result<usize> {
    if d < 3 {
        return Err(Error::BadOrder(format!(
            "the LCM TT-rank reference needs d >= 3, got {d}"
        )));
    }
    if n == 0 {
        return Err(Error::BadShape("n must be positive".into()));
    }
    let ctx = JoinSemilattice::divisor();
    let s = OrderedSubset::linear_extension(
        ctx,
        (1..=n as u64).map(Element::int),
    )?;
    Ok(join_closure(&s, d / 2)?.len())
}
