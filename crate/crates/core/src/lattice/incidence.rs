//! Zeta matrices and poset Moebius functions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::subset::OrderedSubset;

/// Boolean matrix of the order relation between two linearly extended
/// subsets: entry `(i, j)` is 1 iff `rows[i] <= cols[j]`.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    rows: OrderedSubset,
    cols: OrderedSubset,
    bits: Vec<bool>,
}

impl IncidenceMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn rows(&self) -> &OrderedSubset {
        &self.rows
    }

    pub fn cols(&self) -> &OrderedSubset {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols.len() + j]
    }

    pub fn nnz(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// With `rows == cols` in a linear extension the matrix is unit upper
    /// triangular; used as a sanity check in tests.
    pub fn is_unit_upper_triangular(&self) -> bool {
        let n = self.nrows();
        if n != self.ncols() {
            return false;
        }
        (0..n).all(|i| self.entry(i, i) && (0..i).all(|j| !self.entry(i, j)))
    }
}

/// The zeta matrix of the order relation restricted to `rows x cols`.
pub fn zeta_matrix(rows: &OrderedSubset, cols: &OrderedSubset) -> Result<IncidenceMatrix> {
    if !rows.same_context(cols) {
        return Err(Error::ContextMismatch);
    }
    let ctx = rows.context();
    let mut bits = Vec::with_capacity(rows.len() * cols.len());
    for x in rows.iter() {
        for y in cols.iter() {
            bits.push(ctx.leq(x, y)?);
        }
    }
    Ok(IncidenceMatrix {
        rows: rows.clone(),
        cols: cols.clone(),
        bits,
    })
}

/// Sparse table of Moebius function values on a linearly extended poset.
#[derive(Debug, Clone)]
pub struct MoebiusTable {
    poset: OrderedSubset,
    values: HashMap<(usize, usize), BigInt>,
}

impl MoebiusTable {
    pub fn poset(&self) -> &OrderedSubset {
        &self.poset
    }

    /// `mu(y_i, y_j)`; zero for incomparable pairs.
    pub fn value(&self, i: usize, j: usize) -> BigInt {
        self.values.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.values.iter()
    }
}

/// Compute the Moebius table by inverting the unit-upper-triangular zeta
/// matrix with exact integer back-substitution. Column by column this solves
/// `zeta * mu = I`, an O(r^2) recursion per column equivalent to the
/// inductive definition of `mu`.
pub fn moebius(poset: &OrderedSubset) -> Result<MoebiusTable> {
    let r = poset.len();
    let ctx = poset.context();
    let mut leq = vec![false; r * r];
    for i in 0..r {
        for j in 0..r {
            leq[i * r + j] = ctx.leq(poset.get(i), poset.get(j))?;
        }
    }
    let mut values: HashMap<(usize, usize), BigInt> = HashMap::new();
    for j in 0..r {
        values.insert((j, j), BigInt::one());
        for i in (0..j).rev() {
            if !leq[i * r + j] {
                continue;
            }
            let mut acc = BigInt::zero();
            for k in (i + 1)..=j {
                if leq[i * r + k] {
                    if let Some(v) = values.get(&(k, j)) {
                        acc += v;
                    }
                }
            }
            if !acc.is_zero() {
                values.insert((i, j), -acc);
            }
        }
    }
    Ok(MoebiusTable {
        poset: poset.clone(),
        values,
    })
}
