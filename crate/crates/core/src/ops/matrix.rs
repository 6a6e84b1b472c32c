//! Dense matrices with exact and numeric rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ArithMode, Scalar};

/// Row-major dense matrix.
#[derive(Debug, Clone)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::BadShape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_flat(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

/// Exact rank over the rationals via fraction-free (Bareiss) elimination.
///
/// Duplicate rows and columns are collapsed first (they never change the
/// rank, and unfoldings of join tensors are full of them), rows are scaled
/// integral, and the two-step Bareiss update keeps every division exact; no
/// tolerance enters anywhere. Float-mode input is refused — that is
/// `numeric_rank`'s job.
pub fn exact_rank<T: Scalar>(m: &Matrix<T>) -> Result<usize> {
    if T::mode() != ArithMode::Exact {
        return Err(Error::ModeMismatch {
            expected: "exact",
            found: T::mode().name().to_string(),
        });
    }
    if m.rows == 0 || m.cols == 0 {
        return Ok(0);
    }
    let rows: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| m.entry(i, j).as_rational().expect("exact mode"))
                .collect()
        })
        .collect();
    let rows = dedup_rows(rows);
    let rows = dedup_rows(transpose(rows));

    // Clear denominators row by row.
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for rationals in &rows {
        let mut scale = BigInt::from(1);
        for q in rationals {
            scale = scale.lcm(q.denom());
        }
        a.push(
            rationals
                .iter()
                .map(|q| q.numer() * (&scale / q.denom()))
                .collect(),
        );
    }
    Ok(bareiss_rank(&mut a))
}

fn dedup_rows(rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let mut seen = std::collections::HashSet::new();
    rows.into_iter().filter(|r| seen.insert(r.clone())).collect()
}

fn transpose(rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let nrows = rows.len();
    let ncols = rows[0].len();
    (0..ncols)
        .map(|j| (0..nrows).map(|i| rows[i][j].clone()).collect())
        .collect()
}

fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        // pivot search: smallest nonzero magnitude keeps the integers tame
        let pivot_row = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].abs());
        let Some(p) = pivot_row else {
            col += 1;
            continue;
        };
        a.swap(rank, p);
        // The Bareiss update must touch every remaining row, including rows
        // whose leading entry is already zero, to keep divisions by the
        // previous pivot exact.
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Threshold policy for counting singular values in `numeric_rank`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TolerancePolicy {
    /// `sigma > max(dims) * eps * sigma_max` (the default).
    #[default]
    MachineEps,
    Absolute(f64),
    Relative(f64),
}

/// Numeric rank of a float matrix by singular value counting.
pub fn numeric_rank(m: &Matrix<f64>, policy: TolerancePolicy) -> Result<usize> {
    if m.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::BadValue("matrix contains a non-finite entry".into()));
    }
    if m.rows == 0 || m.cols == 0 {
        return Ok(0);
    }
    let dm = nalgebra::DMatrix::from_row_slice(m.rows, m.cols, &m.data);
    let svd = dm.svd(false, false);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return Ok(0);
    }
    let threshold = match policy {
        TolerancePolicy::MachineEps => m.rows.max(m.cols) as f64 * f64::EPSILON * sigma_max,
        TolerancePolicy::Absolute(t) => t,
        TolerancePolicy::Relative(t) => t * sigma_max,
    };
    Ok(svd
        .singular_values
        .iter()
        .filter(|&&s| s > threshold)
        .count())
}
