//! The explicit tensor-train decomposition of a join tensor.
//!
//! Cores `G_1..G_{floor(d/2)}` are boolean with exactly one nonzero per
//! (row, mode-index) pair — `G_k(i)_{a,b} = 1` iff `b = x_i v a` under the
//! renumberings of `S^{vee k}` — and the middle core holds the values
//! `f(a v x_i v b)`. Cores past the middle are transposes of the mirrored
//! stored cores, so only the first `floor(d/2)+1` cores exist in memory and
//! the back half is evaluated on the fly.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{join_closure, Element, JoinClosure, OrderedSubset};
use crate::scalar::Scalar;
use crate::valuation::Valuation;

/// A boolean TT-core stored as its transition map: `next[i * from + a]` is
/// the column index of the single nonzero in row `a` of slice `G_k(i)`.
#[derive(Debug, Clone)]
pub(crate) struct Transition {
    pub from: usize,
    pub to: usize,
    pub next: Vec<u32>,
}

impl Transition {
    fn step(&self, i: usize, a: usize) -> usize {
        self.next[i * self.from + a] as usize
    }
}

/// The valued middle core, dense over `(left, n, right)`.
#[derive(Debug, Clone)]
pub(crate) struct MiddleCore<T> {
    pub left: usize,
    pub right: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> MiddleCore<T> {
    fn at(&self, a: usize, i: usize, b: usize, n: usize) -> &T {
        debug_assert!(i < n);
        &self.values[(a * n + i) * self.right + b]
    }
}

/// Tensor-train decomposition with mirrored virtual back half.
#[derive(Debug, Clone)]
pub struct TensorTrain<T> {
    base: OrderedSubset,
    d: usize,
    closures: Vec<JoinClosure>,
    pos1: Vec<u32>,
    transitions: Vec<Transition>,
    middle: MiddleCore<T>,
    ranks: Vec<usize>,
}

impl<T: Scalar> TensorTrain<T> {
    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn base(&self) -> &OrderedSubset {
        &self.base
    }

    /// Compression ranks `r_1..r_{d-1}`; symmetric with `r_k = r_{d-k}`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// The stored closures `S^{vee 1}..S^{vee floor(d/2)}`.
    pub fn closures(&self) -> &[JoinClosure] {
        &self.closures
    }

    pub(crate) fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub(crate) fn middle(&self) -> &MiddleCore<T> {
        &self.middle
    }

    /// Number of explicitly stored cores, `floor(d/2) + 1`.
    pub fn stored_cores(&self) -> usize {
        self.d / 2 + 1
    }

    /// Nonzero count per stored core, boolean cores first, middle last.
    pub fn core_nnz(&self) -> Vec<u128> {
        let n = self.n() as u128;
        let mut out = vec![n]; // G_1: one unit entry per mode index
        for t in &self.transitions {
            out.push(t.from as u128 * n);
        }
        out.push(
            self.middle
                .values
                .iter()
                .filter(|v| !v.is_zero())
                .count() as u128,
        );
        out
    }

    /// Smallest and largest middle-core value under the scalar order. The
    /// middle core attains every distinct tensor entry value, so this is the
    /// entry value range of the whole tensor.
    pub fn value_bounds(&self) -> (T, T) {
        let mut lo = self.middle.values[0].clone();
        let mut hi = lo.clone();
        for v in &self.middle.values[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        (lo, hi)
    }

    fn check_index(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.d || idx.iter().any(|&i| i >= self.n()) {
            return Err(Error::BadIndex {
                idx: idx.to_vec(),
                n: self.n(),
                d: self.d,
            });
        }
        Ok(())
    }

    /// Reconstruct one entry as `G_1(i_1) G_2(i_2) ... G_d(i_d)`, using the
    /// stored cores on the left half and their transposes on the right.
    pub fn entry(&self, idx: &[usize]) -> Result<T> {
        self.check_index(idx)?;
        let q = self.d / 2;
        let n = self.n();

        let mut a = self.pos1[idx[0]] as usize;
        for k in 2..=q {
            a = self.transitions[k - 2].step(idx[k - 1], a);
        }
        if self.d == 2 {
            return Ok(self.middle.at(a, idx[1], 0, n).clone());
        }
        // Right half: G_k = G_{d-k+1}^T for k in {q+2..d-1}, G_d = G_1^T.
        let mut b = self.pos1[idx[self.d - 1]] as usize;
        for k in ((q + 2)..=(self.d - 1)).rev() {
            let m = self.d - k + 1;
            b = self.transitions[m - 2].step(idx[k - 1], b);
        }
        Ok(self.middle.at(a, idx[q], b, n).clone())
    }

    /// `A x^{d-1}` via mode-2 contractions of each core: the boolean chains
    /// collapse to sparse accumulations and the mirrored half reuses the
    /// stored transitions in transposed orientation.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::BadShape(format!(
                "expected a vector of length {n}, got {}",
                x.len()
            )));
        }
        let q = self.d / 2;
        let right_order = self.d - q - 1;

        // Right product (G_{q+2} x) ... (G_{d-1} x)(G_d x) evaluated right to
        // left; lives over S^{vee m} as m climbs to `right_order`.
        let w = if right_order == 0 {
            None
        } else {
            let mut w = vec![T::zero(); n];
            for i in 0..n {
                let p = self.pos1[i] as usize;
                w[p] = w[p].clone() + x[i].clone();
            }
            for m in 2..=right_order {
                let t = &self.transitions[m - 2];
                let mut next = vec![T::zero(); t.to];
                for i in 0..n {
                    for a in 0..t.from {
                        if w[a].is_zero() {
                            continue;
                        }
                        let b = t.step(i, a);
                        next[b] = next[b].clone() + x[i].clone() * w[a].clone();
                    }
                }
                w = next;
            }
            Some(w)
        };

        // Middle contraction down to a vector over S^{vee q}.
        let left = self.middle.left;
        let right = self.middle.right;
        let mut u = vec![T::zero(); left];
        for a in 0..left {
            let mut acc = T::zero();
            for i in 0..n {
                let row = &self.middle.values[(a * n + i) * right..(a * n + i + 1) * right];
                let inner = match &w {
                    Some(w) => {
                        let mut s = T::zero();
                        for b in 0..right {
                            if !w[b].is_zero() && !row[b].is_zero() {
                                s = s + row[b].clone() * w[b].clone();
                            }
                        }
                        s
                    }
                    None => row[0].clone(),
                };
                acc = acc + x[i].clone() * inner;
            }
            u[a] = acc;
        }

        // Left boolean chain applied forward, shrinking to S^{vee 1}.
        for k in (2..=q).rev() {
            let t = &self.transitions[k - 2];
            let mut prev = vec![T::zero(); t.from];
            for a in 0..t.from {
                let mut acc = T::zero();
                for i in 0..n {
                    acc = acc + x[i].clone() * u[t.step(i, a)].clone();
                }
                prev[a] = acc;
            }
            u = prev;
        }

        Ok((0..n).map(|i| u[self.pos1[i] as usize].clone()).collect())
    }

    /// `A x^d = <x, A x^{d-1}>`.
    pub fn quadratic_form(&self, x: &[T]) -> Result<T> {
        let y = self.apply(x)?;
        let mut acc = T::zero();
        for (xi, yi) in x.iter().zip(&y) {
            acc = acc + xi.clone() * yi.clone();
        }
        Ok(acc)
    }
}

/// Build the tensor-train decomposition of `[S_d]_f`. The `d = 2` case
/// degenerates to a boolean row selector followed by the valued core.
pub fn build_tt<T: Scalar>(
    s: &OrderedSubset,
    f: &Valuation,
    d: usize,
) -> Result<TensorTrain<T>> {
    if d < 2 {
        return Err(Error::BadOrder(format!("tensor order must be >= 2, got {d}")));
    }
    let n = s.len();
    if n == 0 {
        return Err(Error::BadShape("empty index set".into()));
    }
    let ctx = s.context();
    let q = d / 2;
    let right_order = d - q - 1;

    let closures: Vec<JoinClosure> = (1..=q)
        .map(|k| join_closure(s, k))
        .collect::<Result<_>>()?;

    let pos1: Vec<u32> = s
        .iter()
        .map(|e| closures[0].renumber(e).expect("base element in S^1") as u32)
        .collect();

    let mut transitions = Vec::with_capacity(q.saturating_sub(1));
    for k in 2..=q {
        let from_set = closures[k - 2].elements();
        let to_set = closures[k - 1].elements();
        let mut next = vec![0u32; n * from_set.len()];
        for i in 0..n {
            for a in 0..from_set.len() {
                let j = ctx.join(from_set.get(a), s.get(i))?;
                let b = to_set.position(&j).ok_or_else(|| {
                    Error::NotASemilattice(format!(
                        "join `{j}` escaped S^{{v {k}}} during core construction"
                    ))
                })?;
                next[i * from_set.len() + a] = b as u32;
            }
        }
        transitions.push(Transition {
            from: from_set.len(),
            to: to_set.len(),
            next,
        });
    }

    let left_set = closures[q - 1].elements();
    let left = left_set.len();
    let right = if right_order == 0 {
        1
    } else {
        closures[right_order - 1].len()
    };

    // Middle values are filled through join-index tables: the partial joins
    // `a v x_i` land in S^{v (q+1)}, and `f` is evaluated once per pair of
    // that closure against the right index set. The (potentially large)
    // dense fill below then only copies.
    let upper = join_closure(s, q + 1)?;
    let upper_set = upper.elements();
    let mut partial_idx = vec![0u32; left * n];
    for a in 0..left {
        for i in 0..n {
            let j = ctx.join(left_set.get(a), s.get(i))?;
            partial_idx[a * n + i] = upper_set.position(&j).ok_or_else(|| {
                Error::NotASemilattice(format!(
                    "join `{j}` escaped S^{{v {}}} during core construction",
                    q + 1
                ))
            })? as u32;
        }
    }
    let mut cache: HashMap<Element, T> = HashMap::new();
    let mut eval = |e: Element| -> Result<T> {
        if let Some(v) = cache.get(&e) {
            return Ok(v.clone());
        }
        let v: T = f.eval(&e)?;
        cache.insert(e, v.clone());
        Ok(v)
    };
    let mut pair_values: Vec<T> = Vec::with_capacity(upper_set.len() * right);
    for g in 0..upper_set.len() {
        if right_order == 0 {
            pair_values.push(eval(upper_set.get(g).clone())?);
        } else {
            let right_set = closures[right_order - 1].elements();
            for b in 0..right {
                let full = ctx.join(upper_set.get(g), right_set.get(b))?;
                pair_values.push(eval(full)?);
            }
        }
    }
    let mut values = Vec::with_capacity(left * n * right);
    for a in 0..left {
        for i in 0..n {
            let g = partial_idx[a * n + i] as usize;
            for b in 0..right {
                values.push(pair_values[g * right + b].clone());
            }
        }
    }

    let ranks: Vec<usize> = (1..d)
        .map(|k| closures[k.min(d - k) - 1].len())
        .collect();

    Ok(TensorTrain {
        base: s.clone(),
        d,
        closures,
        pos1,
        transitions,
        middle: MiddleCore {
            left,
            right,
            values,
        },
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::decomp::dense::materialize_dense;
    use crate::lattice::JoinSemilattice;

    fn divisor_subset(keys: &[u64]) -> OrderedSubset {
        let ctx = JoinSemilattice::divisor();
        OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn middle_core_slices_n2_d4() {
        let s = divisor_subset(&[1, 2]);
        let tt: TensorTrain<BigRational> = build_tt(&s, &Valuation::Identity, 4).unwrap();
        // G_3(1) = [[1,2],[2,2]], G_3(2) = [[2,2],[2,2]] over S^{v2} x S^{v1}
        let m = tt.middle();
        assert_eq!((m.left, m.right), (2, 2));
        let slice = |i: usize| -> Vec<BigRational> {
            (0..2)
                .flat_map(|a| (0..2).map(move |b| (a, b)))
                .map(|(a, b)| m.at(a, i, b, 2).clone())
                .collect()
        };
        assert_eq!(slice(0), vec![rat(1), rat(2), rat(2), rat(2)]);
        assert_eq!(slice(1), vec![rat(2), rat(2), rat(2), rat(2)]);
    }

    #[test]
    fn entry_walkthrough_n2_d4() {
        let s = divisor_subset(&[1, 2]);
        let tt: TensorTrain<BigRational> = build_tt(&s, &Valuation::Identity, 4).unwrap();
        assert_eq!(tt.entry(&[1, 0, 0, 0]).unwrap(), rat(2));
        assert_eq!(tt.entry(&[0, 0, 0, 0]).unwrap(), rat(1));
        assert_eq!(tt.entry(&[1, 1, 1, 1]).unwrap(), rat(2));
        assert_eq!(tt.entry(&[0, 1, 0, 1]).unwrap(), rat(2));
    }

    #[test]
    fn ranks_n2_d4() {
        let s = divisor_subset(&[1, 2]);
        let tt: TensorTrain<f64> = build_tt(&s, &Valuation::Identity, 4).unwrap();
        assert_eq!(tt.ranks(), &[2, 2, 2]);
    }

    #[test]
    fn core_nnz_n2_d4() {
        let s = divisor_subset(&[1, 2]);
        let tt: TensorTrain<f64> = build_tt(&s, &Valuation::Identity, 4).unwrap();
        assert_eq!(tt.core_nnz(), vec![2, 4, 8]);
        assert_eq!(tt.core_nnz().iter().sum::<u128>(), 14);
    }

    #[test]
    fn rank_symmetry_and_sizes() {
        for d in [2usize, 3, 4, 5, 6, 7] {
            let s = divisor_subset(&[1, 2, 3]);
            let tt: TensorTrain<f64> = build_tt(&s, &Valuation::Identity, d).unwrap();
            let ranks = tt.ranks();
            assert_eq!(ranks.len(), d - 1);
            for k in 1..d {
                assert_eq!(ranks[k - 1], ranks[d - k - 1], "d={d}, k={k}");
            }
        }
    }

    #[test]
    fn matches_dense_small() {
        for d in [2usize, 3, 4, 5] {
            let s = divisor_subset(&[1, 2, 3]);
            let tt: TensorTrain<BigRational> =
                build_tt(&s, &Valuation::Identity, d).unwrap();
            let dense = materialize_dense::<BigRational>(&s, &Valuation::Identity, d).unwrap();
            for flat in 0..dense.len() {
                let idx = dense.multi_index(flat);
                assert_eq!(&tt.entry(&idx).unwrap(), dense.flat(flat), "d={d} idx={idx:?}");
            }
        }
    }

    #[test]
    fn matches_dense_deep_orders() {
        // d >= 7 walks several mirrored cores on the right side
        for (keys, d) in [
            (vec![1u64, 2], 7usize),
            (vec![1, 2], 8),
            (vec![1, 2], 10),
            (vec![1, 2, 3], 7),
            (vec![1, 2, 3], 9),
            (vec![2, 3, 5], 8),
        ] {
            let s = divisor_subset(&keys);
            let tt: TensorTrain<BigRational> =
                build_tt(&s, &Valuation::Identity, d).unwrap();
            let dense = materialize_dense::<BigRational>(&s, &Valuation::Identity, d).unwrap();
            for flat in 0..dense.len() {
                let idx = dense.multi_index(flat);
                assert_eq!(
                    &tt.entry(&idx).unwrap(),
                    dense.flat(flat),
                    "keys={keys:?} d={d} idx={idx:?}"
                );
            }
        }
    }

    #[test]
    fn apply_matches_dense_deep_orders() {
        use crate::ops::Contractor;
        for (keys, d) in [(vec![1u64, 2], 7usize), (vec![1, 2, 3], 8), (vec![1, 2, 3], 9)] {
            let s = divisor_subset(&keys);
            let n = s.len();
            let x: Vec<BigRational> = (0..n)
                .map(|i| BigRational::new((i as i64 + 1).into(), 2.into()))
                .collect();
            let tt: TensorTrain<BigRational> =
                build_tt(&s, &Valuation::Identity, d).unwrap();
            let dense = Contractor::Dense(
                materialize_dense::<BigRational>(&s, &Valuation::Identity, d).unwrap(),
            );
            assert_eq!(tt.apply(&x).unwrap(), dense.apply(&x).unwrap(), "keys={keys:?} d={d}");
            assert_eq!(
                tt.quadratic_form(&x).unwrap(),
                dense.quadratic_form(&x).unwrap()
            );
        }
    }

    #[test]
    fn apply_closed_form_n2_d4() {
        let s = divisor_subset(&[1, 2]);
        let tt: TensorTrain<BigRational> = build_tt(&s, &Valuation::Identity, 4).unwrap();
        let x = vec![rat(1), rat(1)];
        assert_eq!(tt.apply(&x).unwrap(), vec![rat(15), rat(16)]);
        assert_eq!(tt.quadratic_form(&x).unwrap(), rat(31));
        let e1 = vec![rat(1), rat(0)];
        assert_eq!(tt.apply(&e1).unwrap(), vec![rat(1), rat(2)]);
        assert_eq!(tt.quadratic_form(&e1).unwrap(), rat(1));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let s = divisor_subset(&[1, 2]);
        let tt: TensorTrain<f64> = build_tt(&s, &Valuation::Identity, 4).unwrap();
        assert!(matches!(tt.apply(&[1.0]), Err(Error::BadShape(_))));
    }
}
