//! Contraction kernels: `A x^{d-1}` and `A x^d` over the three tensor
//! representations.

use crate::decomp::{DenseTensor, PolyadicDecomposition, TensorTrain};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A tensor held in one of the three interchangeable representations. All
/// backends produce identical contraction results on identical tensors
/// (bit-identical in exact mode).
#[derive(Debug, Clone)]
pub enum Contractor<T> {
    Dense(DenseTensor<T>),
    Cp(PolyadicDecomposition<T>),
    Tt(TensorTrain<T>),
}

impl<T: Scalar> Contractor<T> {
    pub fn n(&self) -> usize {
        match self {
            Contractor::Dense(a) => a.n(),
            Contractor::Cp(a) => a.n(),
            Contractor::Tt(a) => a.n(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            Contractor::Dense(a) => a.d(),
            Contractor::Cp(a) => a.d(),
            Contractor::Tt(a) => a.d(),
        }
    }

    pub fn backend_name(&self) -> &'static str {
        match self {
            Contractor::Dense(_) => "dense",
            Contractor::Cp(_) => "cp",
            Contractor::Tt(_) => "tt",
        }
    }

    fn check_vector(&self, x: &[T]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::BadShape(format!(
                "expected a vector of length {}, got {}",
                self.n(),
                x.len()
            )));
        }
        Ok(())
    }

    /// `A x^{d-1}`: contract modes `2..d` against `x`.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_vector(x)?;
        match self {
            Contractor::Dense(a) => dense_apply(a, x),
            Contractor::Cp(a) => cp_apply(a, x),
            Contractor::Tt(a) => a.apply(x),
        }
    }

    /// `A x^d`, which equals `<x, A x^{d-1}>`.
    pub fn quadratic_form(&self, x: &[T]) -> Result<T> {
        let y = self.apply(x)?;
        let mut acc = T::zero();
        for (xi, yi) in x.iter().zip(&y) {
            acc = acc + xi.clone() * yi.clone();
        }
        Ok(acc)
    }

    /// Smallest and largest entry value of the represented tensor. The CP
    /// and TT backends read the `f`-values they retain (every tensor entry
    /// is such a value), the dense backend scans its entries.
    pub fn value_bounds(&self) -> (T, T) {
        let scan = |vals: &mut dyn Iterator<Item = T>| -> (T, T) {
            let first = vals.next().expect("nonempty tensor");
            let mut lo = first.clone();
            let mut hi = first;
            for v in vals {
                if v < lo {
                    lo = v.clone();
                }
                if v > hi {
                    hi = v;
                }
            }
            (lo, hi)
        };
        match self {
            Contractor::Dense(a) => scan(&mut a.data().iter().cloned()),
            Contractor::Cp(a) => scan(&mut a.values_on_columns().iter().cloned()),
            Contractor::Tt(a) => a.value_bounds(),
        }
    }
}

fn dense_apply<T: Scalar>(a: &DenseTensor<T>, x: &[T]) -> Result<Vec<T>> {
    let n = a.n();
    let d = a.d();
    let block = n.pow((d - 1) as u32);
    // Weight of the trailing d-1 indices, built once per output pass as a
    // running product over the odometer.
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = T::zero();
        let base = i * block;
        let mut idx = vec![0usize; d - 1];
        let mut weights = Vec::with_capacity(d - 1);
        weights.push(x[0].clone());
        for p in 1..(d - 1) {
            let w = weights[p - 1].clone() * x[0].clone();
            weights.push(w);
        }
        for flat in 0..block {
            let w = weights[d - 2].clone();
            if !w.is_zero() {
                acc = acc + a.flat(base + flat).clone() * w;
            }
            // advance odometer and rebuild the weight suffix that changed
            let mut p = d - 1;
            while p > 0 && idx[p - 1] + 1 == n {
                idx[p - 1] = 0;
                p -= 1;
            }
            if p == 0 {
                break;
            }
            idx[p - 1] += 1;
            for q in (p - 1)..(d - 1) {
                let xq = x[idx[q]].clone();
                weights[q] = if q == 0 {
                    xq
                } else {
                    weights[q - 1].clone() * xq
                };
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn cp_apply<T: Scalar>(cp: &PolyadicDecomposition<T>, x: &[T]) -> Result<Vec<T>> {
    let n = cp.n();
    let d = cp.d();
    let r = cp.term_count();
    // s = E^T x
    let mut s = vec![T::zero(); r];
    for (k, sk) in s.iter_mut().enumerate() {
        let mut acc = T::zero();
        for (i, xi) in x.iter().enumerate() {
            if cp.factor_entry(i, k) {
                acc = acc + xi.clone();
            }
        }
        *sk = acc;
    }
    // out_i = sum_k c_k E_{i,k} s_k^{d-1}
    let mut powered = Vec::with_capacity(r);
    for sk in &s {
        let mut p = T::one();
        for _ in 0..(d - 1) {
            p = p * sk.clone();
        }
        powered.push(p);
    }
    let mut out = vec![T::zero(); n];
    for (i, oi) in out.iter_mut().enumerate() {
        let mut acc = T::zero();
        for k in 0..r {
            if cp.factor_entry(i, k) {
                acc = acc + cp.coefficients()[k].clone() * powered[k].clone();
            }
        }
        *oi = acc;
    }
    Ok(out)
}
