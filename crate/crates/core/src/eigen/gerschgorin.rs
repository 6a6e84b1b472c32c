//! Gerschgorin-type eigenvalue region for join tensors.
//!
//! Every eigenvalue lies in the union of disks centered at `f(x_i)` with
//! radius `(n^{d-1} - 1) c_i`, where `c_i` maximizes `|f(x_i v ...)|` over
//! index tuples not all equal to `i`. The maximum is taken over closure
//! elements rather than the `n^{d-1}` tuples: every `b` in `S^{vee (d-1)}`
//! other than `x_i` is witnessed by some admissible tuple, and `b = x_i`
//! itself is admissible exactly when `d >= 3` and some other element sits
//! below `x_i` (the tuple `(j, i, ..., i)` then witnesses it).

use crate::error::{Error, Result};
use crate::eigen::power::EigenEstimate;
use crate::lattice::{join_closure, OrderedSubset};
use crate::scalar::Scalar;
use crate::valuation::Valuation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: f64,
    pub radius: f64,
}

/// The disks, the uniform bounds `c_i`, and the real upper edge of the
/// region.
#[derive(Debug, Clone)]
pub struct GerschgorinRegion {
    pub disks: Vec<Disk>,
    pub c: Vec<f64>,
    pub real_upper: f64,
}

/// Compute the region for `[S_d]_f`. Maxima of `|f|` are taken in the build
/// arithmetic of `T` and only then converted to floats.
pub fn gerschgorin_bound<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
) -> Result<GerschgorinRegion> {
    if d < 2 {
        return Err(Error::BadOrder(format!("tensor order must be >= 2, got {d}")));
    }
    let n = s.len();
    if n == 0 {
        return Err(Error::BadShape("empty index set".into()));
    }
    let ctx = s.context();
    let closure = join_closure(s, d - 1)?;
    let factor = (n as f64).powi((d - 1) as i32) - 1.0;

    let mut disks = Vec::with_capacity(n);
    let mut cs = Vec::with_capacity(n);
    for i in 0..n {
        let xi = s.get(i);
        let mut best: Option<T> = None;
        for b in closure.elements().iter() {
            let admissible = if b == xi {
                d >= 3 && {
                    let mut found = false;
                    for j in 0..n {
                        if j != i && ctx.leq(s.get(j), xi)? {
                            found = true;
                            break;
                        }
                    }
                    found
                }
            } else {
                true
            };
            if !admissible {
                continue;
            }
            let joined = ctx.join(xi, b)?;
            let value: T = f.eval::<T>(&joined)?.abs_val();
            best = Some(match best {
                Some(cur) if cur >= value => cur,
                _ => value,
            });
        }
        let ci = best.map_or(0.0, |v| v.to_f64());
        let center = f.eval::<T>(xi)?.to_f64();
        cs.push(ci);
        disks.push(Disk {
            center,
            radius: factor * ci,
        });
    }
    let real_upper = disks
        .iter()
        .map(|disk| disk.center + disk.radius)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(GerschgorinRegion {
        disks,
        c: cs,
        real_upper,
    })
}

/// Containment check of a power-method bracket against the region.
#[derive(Debug, Clone, Copy)]
pub struct BoundCheck {
    pub holds: bool,
    /// `lambda / real_upper`, the sharpness of the bound.
    pub ratio: f64,
    pub lambda_upper: f64,
    pub real_upper: f64,
}

/// Assert `lambda_upper <= real_upper` up to `slack` (float-mode allowance);
/// a violation indicates a bug rather than a loose bound.
pub fn bound_check(est: &EigenEstimate, region: &GerschgorinRegion, slack: f64) -> BoundCheck {
    BoundCheck {
        holds: est.lambda_upper <= region.real_upper + slack,
        ratio: est.lambda / region.real_upper,
        lambda_upper: est.lambda_upper,
        real_upper: region.real_upper,
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::One;

    use super::*;
    use crate::decomp::build_tt;
    use crate::eigen::power::{power_method, PowerConfig};
    use crate::lattice::{Element, JoinSemilattice};
    use crate::ops::Contractor;

    fn divisor_subset(keys: &[u64]) -> OrderedSubset {
        let ctx = JoinSemilattice::divisor();
        OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
    }

    #[test]
    fn region_n2_d4() {
        let s = divisor_subset(&[1, 2]);
        let r = gerschgorin_bound::<BigRational>(&s, &Valuation::Identity, 4).unwrap();
        assert_eq!(r.c, vec![2.0, 2.0]);
        assert_eq!(r.disks[0], Disk { center: 1.0, radius: 14.0 });
        assert_eq!(r.disks[1], Disk { center: 2.0, radius: 14.0 });
        assert_eq!(r.real_upper, 16.0);
    }

    #[test]
    fn region_n2_d3() {
        let s = divisor_subset(&[1, 2]);
        let r = gerschgorin_bound::<BigRational>(&s, &Valuation::Identity, 3).unwrap();
        assert_eq!(r.c, vec![2.0, 2.0]);
        assert_eq!(r.real_upper, 8.0);
    }

    #[test]
    fn join_closed_chain_bound_matches_max_value() {
        let ctx = JoinSemilattice::max_chain();
        let s = OrderedSubset::linear_extension(
            ctx,
            (1..=4u64).map(Element::int),
        )
        .unwrap();
        let r = gerschgorin_bound::<BigRational>(&s, &Valuation::Identity, 4).unwrap();
        // join-closed set: every c_i is at most max f(x_j) = n
        assert!(r.c.iter().all(|&c| c <= 4.0));
    }

    #[test]
    fn singleton_has_zero_radius() {
        let s = divisor_subset(&[7]);
        let r = gerschgorin_bound::<BigRational>(&s, &Valuation::Identity, 4).unwrap();
        assert_eq!(r.disks[0].radius, 0.0);
        assert_eq!(r.real_upper, 7.0);
    }

    #[test]
    fn brute_force_ci_agreement_small() {
        // compare the closure-based maxima against direct tuple enumeration
        for (n, d) in [(2usize, 3usize), (3, 3), (3, 4), (4, 3), (5, 3)] {
            let s = divisor_subset(&(1..=n as u64).collect::<Vec<_>>());
            let ctx = s.context().clone();
            let r = gerschgorin_bound::<BigRational>(&s, &Valuation::Identity, d).unwrap();
            for i in 0..n {
                let mut best = 0.0f64;
                let mut tuple = vec![0usize; d - 1];
                loop {
                    if !tuple.iter().all(|&t| t == i) {
                        let mut j = s.get(i).clone();
                        for &t in &tuple {
                            j = ctx.join(&j, s.get(t)).unwrap();
                        }
                        let v: f64 = Valuation::Identity.eval(&j).unwrap();
                        best = best.max(v);
                    }
                    let mut p = d - 1;
                    while p > 0 && tuple[p - 1] + 1 == n {
                        tuple[p - 1] = 0;
                        p -= 1;
                    }
                    if p == 0 {
                        break;
                    }
                    tuple[p - 1] += 1;
                }
                assert_eq!(r.c[i], best, "n={n} d={d} i={i}");
            }
        }
    }

    #[test]
    fn bound_check_examples() {
        let s = divisor_subset(&[1, 2]);
        let c = Contractor::Tt(build_tt::<f64>(&s, &Valuation::Identity, 4).unwrap());
        let est = power_method(&c, &PowerConfig::default()).unwrap();
        let region = gerschgorin_bound::<f64>(&s, &Valuation::Identity, 4).unwrap();
        let check = bound_check(&est, &region, 0.0);
        assert!(check.holds);
        assert!((check.ratio - 15.5104 / 16.0).abs() < 1e-3);

        // constant f = 1: lambda = n^{d-1} = real_upper, ratio 1
        let f = Valuation::Constant(BigRational::one());
        let c = Contractor::Tt(build_tt::<f64>(&s, &f, 4).unwrap());
        let est = power_method(&c, &PowerConfig::default()).unwrap();
        let region = gerschgorin_bound::<f64>(&s, &f, 4).unwrap();
        assert_eq!(region.real_upper, 8.0);
        let check = bound_check(&est, &region, 1e-9);
        assert!(check.holds);
        assert!((check.ratio - 1.0).abs() < 1e-9);
    }
}
