//! Unfolding (matricization) of dense tensors.

use crate::decomp::DenseTensor;
use crate::error::{Error, Result};
use crate::ops::matrix::Matrix;
use crate::scalar::Scalar;

/// The k-th unfolding: an `n^k x n^{d-k}` matrix whose row multi-index is
/// `(i_1..i_k)` and column multi-index `(i_{k+1}..i_d)`, both row-major.
#[derive(Debug, Clone)]
pub struct UnfoldingMatrix<T> {
    split: usize,
    matrix: Matrix<T>,
}

impl<T: Scalar> UnfoldingMatrix<T> {
    pub fn split(&self) -> usize {
        self.split
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }
}

/// Reshape a dense tensor at split position `k`. Because the dense layout is
/// row-major with the first index slowest, the flat data re-reads directly as
/// the unfolding.
pub fn unfolding<T: Scalar>(a: &DenseTensor<T>, k: usize) -> Result<UnfoldingMatrix<T>> {
    let d = a.d();
    if k == 0 || k >= d {
        return Err(Error::BadSplit { k, max: d - 1 });
    }
    let rows = a.n().pow(k as u32);
    let cols = a.n().pow((d - k) as u32);
    Ok(UnfoldingMatrix {
        split: k,
        matrix: Matrix::from_flat(rows, cols, a.data().to_vec()),
    })
}
