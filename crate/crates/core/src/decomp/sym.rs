//! Symmetric-part storage: one value per sorted multi-index.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decomp::dense::DenseTensor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const EXHAUSTIVE_LIMIT: usize = 1_000_000;
const SAMPLE_CHECKS: usize = 10_000;
const SAMPLE_SEED: u64 = 0x5EED;

/// Storage of a symmetric tensor keyed by ascending multi-indices; the entry
/// count is `C(d+n-1, d)`.
#[derive(Debug, Clone)]
pub struct SymmetricPart<T> {
    n: usize,
    d: usize,
    entries: HashMap<Vec<u32>, T>,
}

impl<T: Scalar> SymmetricPart<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// Look up any permutation of a stored index by sorting it first.
    pub fn recover_entry(&self, idx: &[usize]) -> Result<&T> {
        if idx.len() != self.d || idx.iter().any(|&i| i >= self.n) {
            return Err(Error::BadIndex {
                idx: idx.to_vec(),
                n: self.n,
                d: self.d,
            });
        }
        let mut key: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
        key.sort_unstable();
        self.entries.get(&key).ok_or_else(|| Error::BadIndex {
            idx: idx.to_vec(),
            n: self.n,
            d: self.d,
        })
    }
}

/// Extract the symmetric part of a dense tensor. Symmetry is validated
/// exhaustively when the tensor has at most 10^6 entries and by seeded
/// sampling above that; the first asymmetric entry found is reported.
pub fn symmetric_part<T: Scalar>(a: &DenseTensor<T>) -> Result<SymmetricPart<T>> {
    let n = a.n();
    let d = a.d();
    let mut entries = HashMap::new();

    // Walk ascending multi-indices only.
    let mut idx = vec![0usize; d];
    loop {
        let key: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
        entries.insert(key, a.entry(&idx)?.clone());
        // next ascending multi-index
        let mut p = d;
        while p > 0 && idx[p - 1] == n - 1 {
            p -= 1;
        }
        if p == 0 {
            break;
        }
        idx[p - 1] += 1;
        let v = idx[p - 1];
        for q in p..d {
            idx[q] = v;
        }
    }

    let check = |idx: &[usize]| -> Result<()> {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        let stored = entries
            .get(&sorted.iter().map(|&i| i as u32).collect::<Vec<_>>())
            .expect("sorted key present");
        if a.entry(idx)? != stored {
            return Err(Error::NotSymmetric(idx.to_vec()));
        }
        Ok(())
    };
    if a.len() <= EXHAUSTIVE_LIMIT {
        for flat in 0..a.len() {
            check(&a.multi_index(flat))?;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_CHECKS {
            let idx: Vec<usize> = (0..d).map(|_| rng.random_range(0..n)).collect();
            check(&idx)?;
        }
    }

    Ok(SymmetricPart { n, d, entries })
}

/// `C(d+n-1, d)`: the number of ascending multi-indices, i.e. the symmetric
/// part's storage size. Computed exactly with running division.
pub fn multiset_count(n: usize, d: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for k in 1..=d {
        acc *= BigUint::from(n - 1 + k);
        acc /= BigUint::from(k);
    }
    acc
}

/// `multiset_count` narrowed to `u128`, failing when it does not fit.
pub fn multiset_count_u128(n: usize, d: usize) -> Result<u128> {
    multiset_count(n, d).to_u128().ok_or_else(|| {
        Error::TooLarge(format!("C({}+{}-1,{}) exceeds u128", d, n, d))
    })
}
