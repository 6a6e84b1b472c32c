//! The explicit symmetric polyadic decomposition of a join tensor.
//!
//! With `Y = S^{vee d} = {y_1 <= ... <= y_r}` the tensor factors as
//! `A_{i_1..i_d} = sum_k c_k E_{i_1,k} ... E_{i_d,k}` where `E` is the
//! boolean order matrix of `S` against `Y` and the coefficients solve the
//! unit-upper-triangular system `zeta(Y,Y) c = f(Y)` — Moebius inversion by
//! back-substitution.

use crate::error::{Error, Result};
use crate::lattice::{join_closure, Element, JoinClosure, OrderedSubset};
use crate::scalar::Scalar;
use crate::valuation::Valuation;

/// Coefficient vector plus one boolean factor matrix shared by all modes.
#[derive(Debug, Clone)]
pub struct PolyadicDecomposition<T> {
    closure: JoinClosure,
    d: usize,
    /// Column `j` corresponds to `columns[j]`; defaults to the closure's
    /// linear extension, but nested profile orderings may permute it.
    columns: Vec<Element>,
    coefficients: Vec<T>,
    /// `f` evaluated on `columns` (kept for positivity and range checks).
    values: Vec<T>,
    /// Row-major `n x r` boolean factor bits.
    factor: Vec<bool>,
}

impl<T: Scalar> PolyadicDecomposition<T> {
    pub fn n(&self) -> usize {
        self.closure.base().len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of polyadic terms; always `#S^{vee d}`.
    pub fn term_count(&self) -> usize {
        self.coefficients.len()
    }

    pub fn base(&self) -> &OrderedSubset {
        self.closure.base()
    }

    pub fn closure(&self) -> &JoinClosure {
        &self.closure
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn values_on_columns(&self) -> &[T] {
        &self.values
    }

    pub fn columns(&self) -> &[Element] {
        &self.columns
    }

    pub fn factor_entry(&self, i: usize, k: usize) -> bool {
        self.factor[i * self.term_count() + k]
    }

    pub fn factor_nnz(&self) -> usize {
        self.factor.iter().filter(|&&b| b).count()
    }

    /// Reorder columns by `perm`, where `perm[j]` is the current position of
    /// the element that should become column `j`.
    pub fn with_column_order(&self, perm: &[usize]) -> Result<Self> {
        let r = self.term_count();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::BadShape(format!(
                "column permutation must be a bijection on 0..{r}"
            )));
        }
        let n = self.n();
        let mut factor = vec![false; n * r];
        for i in 0..n {
            for j in 0..r {
                factor[i * r + j] = self.factor_entry(i, perm[j]);
            }
        }
        Ok(PolyadicDecomposition {
            closure: self.closure.clone(),
            d: self.d,
            columns: perm.iter().map(|&p| self.columns[p].clone()).collect(),
            coefficients: perm.iter().map(|&p| self.coefficients[p].clone()).collect(),
            values: perm.iter().map(|&p| self.values[p].clone()).collect(),
            factor,
        })
    }

    /// `sum_k c_k prod_j E_{idx_j, k}`.
    pub fn evaluate(&self, idx: &[usize]) -> Result<T> {
        let n = self.n();
        if idx.len() != self.d || idx.iter().any(|&i| i >= n) {
            return Err(Error::BadIndex {
                idx: idx.to_vec(),
                n,
                d: self.d,
            });
        }
        let r = self.term_count();
        let mut acc = T::zero();
        'terms: for k in 0..r {
            for &i in idx {
                if !self.factor[i * r + k] {
                    continue 'terms;
                }
            }
            acc = acc + self.coefficients[k].clone();
        }
        Ok(acc)
    }
}

/// Build the polyadic decomposition of `[S_d]_f`.
pub fn build_cp<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
) -> Result<PolyadicDecomposition<T>> {
    if d < 2 {
        return Err(Error::BadOrder(format!("tensor order must be >= 2, got {d}")));
    }
    let closure = join_closure(s, d)?;
    let ctx = s.context();
    let y = closure.elements();
    let r = y.len();
    let n = s.len();

    let values: Vec<T> = y
        .iter()
        .map(|e| f.eval(e))
        .collect::<Result<_>>()?;

    // zeta(Y, Y) restricted to comparable pairs, as adjacency lists per row.
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); r];
    for i in 0..r {
        for j in (i + 1)..r {
            if ctx.leq(y.get(i), y.get(j))? {
                above[i].push(j);
            }
        }
    }
    // Back-substitution on the unit upper triangular system E c = values.
    let mut coefficients = vec![T::zero(); r];
    for i in (0..r).rev() {
        let mut acc = values[i].clone();
        for &j in &above[i] {
            acc = acc - coefficients[j].clone();
        }
        coefficients[i] = acc;
    }

    let mut factor = vec![false; n * r];
    for i in 0..n {
        for j in 0..r {
            factor[i * r + j] = ctx.leq(s.get(i), y.get(j))?;
        }
    }

    Ok(PolyadicDecomposition {
        columns: y.elements().to_vec(),
        closure,
        d,
        coefficients,
        values,
        factor,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;
    use num_traits::One;

    use super::*;
    use crate::lattice::JoinSemilattice;

    fn divisor_subset(keys: &[u64]) -> OrderedSubset {
        let ctx = JoinSemilattice::divisor();
        OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
    }

    fn chain_subset(keys: &[u64]) -> OrderedSubset {
        let ctx = JoinSemilattice::max_chain();
        OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn coefficients_for_two_three() {
        let s = divisor_subset(&[2, 3]);
        let cp: PolyadicDecomposition<BigRational> =
            build_cp(&s, &Valuation::Identity, 2).unwrap();
        assert_eq!(cp.term_count(), 3);
        assert_eq!(cp.coefficients(), &[rat(-4), rat(-3), rat(6)]);
        // join-matrix entries
        assert_eq!(cp.evaluate(&[0, 0]).unwrap(), rat(2));
        assert_eq!(cp.evaluate(&[0, 1]).unwrap(), rat(6));
        assert_eq!(cp.evaluate(&[1, 1]).unwrap(), rat(3));
    }

    #[test]
    fn coefficients_for_chain() {
        let s = chain_subset(&[1, 2, 3]);
        for d in [2usize, 3, 5] {
            let cp: PolyadicDecomposition<BigRational> =
                build_cp(&s, &Valuation::Identity, d).unwrap();
            assert_eq!(cp.coefficients(), &[rat(-1), rat(-1), rat(3)]);
        }
    }

    #[test]
    fn constant_valuation_is_rank_one() {
        let s = chain_subset(&[1, 2, 3]);
        let cp: PolyadicDecomposition<BigRational> =
            build_cp(&s, &Valuation::Constant(BigRational::one()), 3).unwrap();
        assert_eq!(cp.coefficients(), &[rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn evaluate_examples() {
        let s = divisor_subset(&[2, 3]);
        let cp: PolyadicDecomposition<BigRational> =
            build_cp(&s, &Valuation::Identity, 2).unwrap();
        assert_eq!(cp.evaluate(&[0, 1]).unwrap(), rat(6));
        assert_eq!(cp.evaluate(&[0, 0]).unwrap(), rat(2));
        let chain = chain_subset(&[1, 2, 3]);
        let cp3: PolyadicDecomposition<BigRational> =
            build_cp(&chain, &Valuation::Identity, 3).unwrap();
        assert_eq!(cp3.evaluate(&[0, 2, 1]).unwrap(), rat(3));
    }

    #[test]
    fn bad_index() {
        let s = divisor_subset(&[2, 3]);
        let cp: PolyadicDecomposition<BigRational> =
            build_cp(&s, &Valuation::Identity, 2).unwrap();
        assert!(cp.evaluate(&[0, 5]).is_err());
        assert!(cp.evaluate(&[0]).is_err());
    }

    #[test]
    fn missing_table_entry_surfaces() {
        use crate::valuation::ValuationTable;
        let s = divisor_subset(&[2, 3]);
        // covers 2 and 3 but not their join 6
        let t = ValuationTable::from_pairs(
            [("2".into(), "2".into()), ("3".into(), "3".into())],
            "inline",
        );
        let err = build_cp::<BigRational>(&s, &Valuation::Table(t), 2).unwrap_err();
        assert!(matches!(err, Error::MissingValuation(_)));
    }

    #[test]
    fn column_reorder_preserves_evaluation() {
        let s = divisor_subset(&[2, 3, 4]);
        let cp: PolyadicDecomposition<BigRational> =
            build_cp(&s, &Valuation::Identity, 3).unwrap();
        let r = cp.term_count();
        let perm: Vec<usize> = (0..r).rev().collect();
        let reordered = cp.with_column_order(&perm).unwrap();
        for idx in [[0, 0, 0], [0, 1, 2], [2, 2, 1]] {
            assert_eq!(
                cp.evaluate(&idx).unwrap(),
                reordered.evaluate(&idx).unwrap()
            );
        }
    }
}
