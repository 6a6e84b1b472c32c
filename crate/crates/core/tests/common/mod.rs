//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use jointensor_core::{Element, ExplicitPoset, JoinSemilattice, OrderedSubset, Valuation};

pub fn divisor_subset(keys: &[u64]) -> OrderedSubset {
    let ctx = JoinSemilattice::divisor();
    OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
}

pub fn chain_subset(keys: &[u64]) -> OrderedSubset {
    let ctx = JoinSemilattice::max_chain();
    OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
}

/// A 6-element non-chain join semilattice given explicitly: the divisibility
/// order on {1,2,3,4,6,12} with numeric labels, so numeric valuations apply.
pub fn explicit6() -> Arc<JoinSemilattice> {
    let names: Vec<String> = ["1", "2", "3", "4", "6", "12"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut pairs = Vec::new();
    let vals = [1u64, 2, 3, 4, 6, 12];
    for (i, a) in vals.iter().enumerate() {
        for (j, b) in vals.iter().enumerate() {
            if i != j && b % a == 0 {
                pairs.push((a.to_string(), b.to_string()));
            }
        }
    }
    let poset = ExplicitPoset::from_generators(names, &pairs).unwrap();
    JoinSemilattice::explicit(poset).unwrap()
}

/// First `n` elements of the explicit 6-element lattice in declared order.
pub fn explicit6_subset(ctx: &Arc<JoinSemilattice>, n: usize) -> OrderedSubset {
    let names = ["1", "2", "3", "4", "6", "12"];
    OrderedSubset::linear_extension(
        Arc::clone(ctx),
        names[..n].iter().map(|s| Element::name(*s)),
    )
    .unwrap()
}

/// The free join semilattice on four generators: nonempty subsets of
/// {a,b,c,d} ordered by inclusion with join = union. Every join of a
/// distinct generator subset is distinct, so it realizes the worst-case
/// closure growth.
pub fn boolean15() -> (Arc<JoinSemilattice>, OrderedSubset) {
    let letters = ['a', 'b', 'c', 'd'];
    let mut names = Vec::new();
    for mask in 1u32..16 {
        let name: String = letters
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| *c)
            .collect();
        names.push(name);
    }
    let mut pairs = Vec::new();
    for x in 1u32..16 {
        for y in 1u32..16 {
            if x != y && x & y == x {
                pairs.push((
                    names[(x - 1) as usize].clone(),
                    names[(y - 1) as usize].clone(),
                ));
            }
        }
    }
    let poset = ExplicitPoset::from_generators(names, &pairs).unwrap();
    let ctx = JoinSemilattice::explicit(poset).unwrap();
    let base = OrderedSubset::linear_extension(
        Arc::clone(&ctx),
        ["a", "b", "c", "d"].iter().map(|s| Element::name(*s)),
    )
    .unwrap();
    (ctx, base)
}

/// Independent Moebius oracle: the inductive row recursion
/// `mu(x,x) = 1`, `mu(x,y) = -sum_{x <= z < y} mu(x,z)`, computed directly
/// on a linearly extended poset. The library inverts the zeta matrix
/// column-wise instead, so agreement is a genuine cross-check.
pub fn moebius_inductive(poset: &OrderedSubset) -> HashMap<(usize, usize), BigInt> {
    let r = poset.len();
    let ctx = poset.context();
    let mut leq = vec![false; r * r];
    for i in 0..r {
        for j in 0..r {
            leq[i * r + j] = ctx.leq(poset.get(i), poset.get(j)).unwrap();
        }
    }
    let mut table = HashMap::new();
    for i in 0..r {
        table.insert((i, i), BigInt::one());
        for j in (i + 1)..r {
            if !leq[i * r + j] {
                continue;
            }
            let mut acc = BigInt::zero();
            for z in i..j {
                if leq[i * r + z] && leq[z * r + j] {
                    if let Some(v) = table.get(&(i, z)) {
                        acc += v;
                    }
                }
            }
            if !acc.is_zero() {
                table.insert((i, j), -acc);
            }
        }
    }
    table
}

/// The four grid valuations.
pub fn grid_valuations() -> Vec<Valuation> {
    vec![
        Valuation::Identity,
        Valuation::Constant(BigRational::one()),
        Valuation::Power(2),
        Valuation::Reciprocal,
    ]
}

/// Independent binomial via the Pascal recurrence (no division), for
/// cross-checking the closed-form multiset count.
pub fn binomial_pascal(n: usize, k: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    if k > n {
        return BigUint::zero();
    }
    let mut row: Vec<BigUint> = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one()];
        for j in 1..row.len() {
            next.push(&row[j - 1] + &row[j]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row[k].clone()
}

/// Solve `2(t+1)^3 (1 - t^3) = t^3` on (0, 1) by bisection and map through
/// `lambda = 2(t+1)^3`: the analytic dominant eigenvalue of the n=2, d=4
/// LCM tensor.
pub fn analytic_lambda_n2_d4() -> f64 {
    let g = |t: f64| 2.0 * (t + 1.0).powi(3) * (1.0 - t.powi(3)) - t.powi(3);
    let (mut lo, mut hi) = (0.5, 0.999999);
    assert!(g(lo) > 0.0 && g(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    2.0 * (t + 1.0).powi(3)
}
