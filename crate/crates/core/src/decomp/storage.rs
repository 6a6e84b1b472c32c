//! Storage (nonzero-count) reports for the three representations.

use crate::decomp::cp::PolyadicDecomposition;
use crate::decomp::sym::{multiset_count_u128, SymmetricPart};
use crate::decomp::tt::TensorTrain;
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StorageDetail {
    /// nnz(E) plus the `r` coefficients.
    Cp { r: usize, factor_nnz: u128 },
    /// Nonzeros of each stored core, boolean cores first.
    Tt { ranks: Vec<usize>, core_nnz: Vec<u128> },
    /// Closed-form `C(d+n-1, d)`.
    Sym,
}

/// Parameter count of one representation of an `n`-dimensional order-`d`
/// join tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StorageReport {
    pub n: usize,
    pub d: usize,
    pub total: u128,
    pub detail: StorageDetail,
}

impl StorageReport {
    pub fn representation(&self) -> &'static str {
        match self.detail {
            StorageDetail::Cp { .. } => "cp",
            StorageDetail::Tt { .. } => "tt",
            StorageDetail::Sym => "sym",
        }
    }
}

impl<T: Scalar> PolyadicDecomposition<T> {
    pub fn storage_report(&self) -> StorageReport {
        let factor_nnz = self.factor_nnz() as u128;
        StorageReport {
            n: self.n(),
            d: self.d(),
            total: factor_nnz + self.term_count() as u128,
            detail: StorageDetail::Cp {
                r: self.term_count(),
                factor_nnz,
            },
        }
    }
}

impl<T: Scalar> TensorTrain<T> {
    pub fn storage_report(&self) -> StorageReport {
        let core_nnz = self.core_nnz();
        StorageReport {
            n: self.n(),
            d: self.d(),
            total: core_nnz.iter().sum(),
            detail: StorageDetail::Tt {
                ranks: self.ranks().to_vec(),
                core_nnz,
            },
        }
    }
}

impl<T: Scalar> SymmetricPart<T> {
    pub fn storage_report(&self) -> Result<StorageReport> {
        symmetric_storage(self.n(), self.d())
    }
}

/// Symmetric-part storage from the closed form, without materializing.
pub fn symmetric_storage(n: usize, d: usize) -> Result<StorageReport> {
    Ok(StorageReport {
        n,
        d,
        total: multiset_count_u128(n, d)?,
        detail: StorageDetail::Sym,
    })
}
