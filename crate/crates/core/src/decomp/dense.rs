//! Brute-force dense join tensors: the oracle every other builder is
//! checked against.

use crate::error::{Error, Result};
use crate::lattice::{Element, OrderedSubset};
use crate::scalar::Scalar;
use crate::valuation::Valuation;

/// Entry cap for dense materialization.
pub const DEFAULT_DENSE_GUARD: u128 = 100_000_000;

/// A fully materialized order-`d` tensor over `n` indices per mode, stored
/// row-major with the first index slowest.
#[derive(Debug, Clone)]
pub struct DenseTensor<T> {
    n: usize,
    d: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseTensor<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[cfg(test)]
    pub(crate) fn from_parts(n: usize, d: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n.pow(d as u32));
        DenseTensor { n, d, data }
    }

    pub fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.d || idx.iter().any(|&i| i >= self.n) {
            return Err(Error::BadIndex {
                idx: idx.to_vec(),
                n: self.n,
                d: self.d,
            });
        }
        Ok(())
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn entry(&self, idx: &[usize]) -> Result<&T> {
        self.check_index(idx)?;
        Ok(&self.data[self.flat_index(idx)])
    }

    pub fn flat(&self, i: usize) -> &T {
        &self.data[i]
    }

    /// Decode a flat position back into a multi-index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.d];
        for p in (0..self.d).rev() {
            idx[p] = flat % self.n;
            flat /= self.n;
        }
        idx
    }
}

/// Materialize `f(x_{i_1} v ... v x_{i_d})` entry by entry with the default
/// size guard.
pub fn materialize_dense<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
) -> Result<DenseTensor<T>> {
    materialize_dense_guarded(s, f, d, DEFAULT_DENSE_GUARD)
}

/// Materialize with an explicit entry guard.
pub fn materialize_dense_guarded<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
    guard: u128,
) -> Result<DenseTensor<T>> {
    if d < 2 {
        return Err(Error::BadOrder(format!("tensor order must be >= 2, got {d}")));
    }
    let n = s.len();
    if n == 0 {
        return Err(Error::BadShape("empty index set".into()));
    }
    let total = (n as u128).checked_pow(d as u32).ok_or_else(|| {
        Error::TooLarge(format!("n^d overflows for n={n}, d={d}"))
    })?;
    if total > guard {
        return Err(Error::TooLarge(format!(
            "n^d = {total} exceeds the dense guard {guard}"
        )));
    }
    let ctx = s.context();

    // Odometer over multi-indices with a prefix-join stack, so each step
    // recomputes only the joins right of the digit that rolled.
    let mut idx = vec![0usize; d];
    let mut prefix: Vec<Element> = Vec::with_capacity(d);
    prefix.push(s.get(0).clone());
    for p in 1..d {
        let j = ctx.join(&prefix[p - 1], s.get(0))?;
        prefix.push(j);
    }
    let mut data: Vec<T> = Vec::with_capacity(total as usize);
    loop {
        data.push(f.eval(&prefix[d - 1])?);
        // advance
        let mut p = d;
        while p > 0 && idx[p - 1] + 1 == n {
            idx[p - 1] = 0;
            p -= 1;
        }
        if p == 0 {
            break;
        }
        idx[p - 1] += 1;
        for q in (p - 1)..d {
            let x = s.get(idx[q]);
            prefix[q] = if q == 0 {
                x.clone()
            } else {
                ctx.join(&prefix[q - 1], x)?
            };
        }
    }
    Ok(DenseTensor { n, d, data })
}
