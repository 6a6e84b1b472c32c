//! Bracketing power iteration for dominant H-eigenvalues of positive
//! symmetric even-order tensors.
//!
//! Each step maps `x` to the normalized entrywise (d-1)-th root of
//! `A x^{d-1}` and brackets the dominant eigenvalue by the extremal ratios
//! `(A x^{d-1})_i / x_i^{d-1}`. The lower brackets are nondecreasing and the
//! upper ones nonincreasing, squeezing the eigenvalue from both sides.
//!
//! Iteration runs in double precision regardless of build mode: the
//! entrywise roots leave exact arithmetic anyway. Tensor values are rescaled
//! by `1/max f` internally and the brackets scaled back at the end, which
//! keeps the iterate sequence invariant under positive rescaling of `f`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ops::Contractor;

/// Starting vector policy; every choice is strictly positive.
#[derive(Debug, Clone)]
pub enum InitialVector {
    /// `(1/sqrt(n), ..., 1/sqrt(n))` — the deterministic default.
    UniformPositive,
    Given(Vec<f64>),
    SeededRandomPositive(u64),
}

#[derive(Debug, Clone)]
pub struct PowerConfig {
    /// Stop once the bracket width drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub initial: InitialVector,
    /// Run odd orders anyway; the bracket guarantees do not cover them and
    /// the estimate is flagged.
    pub allow_odd: bool,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            tolerance: 1e-10,
            max_iterations: 10_000,
            initial: InitialVector::UniformPositive,
            allow_odd: false,
        }
    }
}

/// Outcome of the bracketing power iteration.
#[derive(Debug, Clone)]
pub struct EigenEstimate {
    pub lambda_lower: f64,
    pub lambda_upper: f64,
    /// Bracket midpoint.
    pub lambda: f64,
    /// Final iterate; nonnegative with unit Euclidean norm.
    pub eigenvector: Vec<f64>,
    /// `(lower_k, upper_k)` per iteration.
    pub history: Vec<(f64, f64)>,
    pub converged: bool,
    pub iterations: usize,
    /// Set when an odd order was forced through `allow_odd`.
    pub outside_theory: bool,
}

/// Run the bracketing power method on any contraction backend.
pub fn power_method(c: &Contractor<f64>, cfg: &PowerConfig) -> Result<EigenEstimate> {
    let n = c.n();
    let d = c.d();
    let outside_theory = d % 2 == 1;
    if outside_theory && !cfg.allow_odd {
        return Err(Error::OddOrder(d));
    }
    let (min_value, max_value) = c.value_bounds();
    if min_value <= 0.0 {
        return Err(Error::NotPositive(format!(
            "minimum entry value {min_value}"
        )));
    }
    if !max_value.is_finite() {
        return Err(Error::BadValue(format!("maximum entry value {max_value}")));
    }
    let scale = max_value;

    let mut x = initial_vector(n, &cfg.initial)?;
    normalize(&mut x);

    let mut history = Vec::new();
    let mut converged = false;
    let exponent = (d - 1) as i32;
    let root = 1.0 / (d - 1) as f64;
    loop {
        // z = (A x^{d-1}) / max f, computed once per iteration and reused
        // for both the brackets and the next iterate.
        let mut z = c.apply(&x)?;
        for v in &mut z {
            *v /= scale;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            if x[i] > 0.0 {
                let ratio = z[i] / x[i].powi(exponent);
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        history.push((lo * scale, hi * scale));
        if (hi - lo) * scale < cfg.tolerance {
            converged = true;
        }
        if converged || history.len() >= cfg.max_iterations {
            for (i, v) in z.iter().enumerate() {
                if *v <= 0.0 {
                    return Err(Error::NotPositive(format!(
                        "contraction produced a nonpositive component at index {i}"
                    )));
                }
            }
            break;
        }
        for v in &mut z {
            if *v <= 0.0 {
                return Err(Error::NotPositive(
                    "contraction produced a nonpositive component".into(),
                ));
            }
            *v = v.powf(root);
        }
        normalize(&mut z);
        x = z;
    }

    let (lambda_lower, lambda_upper) = *history.last().expect("at least one iteration");
    Ok(EigenEstimate {
        lambda_lower,
        lambda_upper,
        lambda: 0.5 * (lambda_lower + lambda_upper),
        eigenvector: x,
        iterations: history.len(),
        history,
        converged,
        outside_theory,
    })
}

fn initial_vector(n: usize, policy: &InitialVector) -> Result<Vec<f64>> {
    match policy {
        InitialVector::UniformPositive => Ok(vec![1.0; n]),
        InitialVector::Given(v) => {
            if v.len() != n {
                return Err(Error::BadShape(format!(
                    "initial vector has length {}, expected {n}",
                    v.len()
                )));
            }
            if v.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
                return Err(Error::NotPositive(
                    "initial vector must be strictly positive and finite".into(),
                ));
            }
            Ok(v.clone())
        }
        InitialVector::SeededRandomPositive(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..n).map(|_| rng.random_range(0.1..1.0)).collect())
        }
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v {
        *x /= norm;
    }
}
