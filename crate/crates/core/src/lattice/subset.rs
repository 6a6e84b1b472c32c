//! Linearly extended subsets and join closures.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::context::JoinSemilattice;
use crate::lattice::element::Element;

/// A finite subset of a semilattice carrying a linear extension: whenever
/// `leq(x_i, x_j)` holds, `i <= j`. Incomparable ties are broken by the
/// ascending canonical key, so the ordering is deterministic.
#[derive(Debug, Clone)]
pub struct OrderedSubset {
    ctx: Arc<JoinSemilattice>,
    elems: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl OrderedSubset {
    /// Topologically sort `elems` under the context order. Duplicates are
    /// collapsed. A relation cycle (possible only for explicit posets built
    /// leniently) is reported as `NotAPartialOrder`.
    pub fn linear_extension(
        ctx: Arc<JoinSemilattice>,
        elems: impl IntoIterator<Item = Element>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut items: Vec<Element> = Vec::new();
        for e in elems {
            ctx.check_member(&e)?;
            if seen.insert(e.clone()) {
                items.push(e);
            }
        }
        let m = items.len();

        // Kahn's algorithm with a min-heap on the canonical key.
        let mut less = vec![Vec::new(); m]; // i -> indices j with items[i] < items[j]
        let mut indegree = vec![0usize; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && ctx.leq(&items[i], &items[j])? {
                    less[i].push(j);
                    indegree[j] += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<(Element, usize)>> = (0..m)
            .filter(|&i| indegree[i] == 0)
            .map(|i| Reverse((items[i].clone(), i)))
            .collect();
        let mut order = Vec::with_capacity(m);
        while let Some(Reverse((_, i))) = ready.pop() {
            order.push(items[i].clone());
            for &j in &less[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(Reverse((items[j].clone(), j)));
                }
            }
        }
        if order.len() < m {
            return Err(Error::NotAPartialOrder(
                "relation contains a cycle".into(),
            ));
        }
        let index = order
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(OrderedSubset {
            ctx,
            elems: order,
            index,
        })
    }

    pub fn context(&self) -> &Arc<JoinSemilattice> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elems.iter()
    }

    /// Position of an element in the linear extension; this is the
    /// renumbering `tau` when `self` is a closure.
    pub fn position(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub(crate) fn same_context(&self, other: &OrderedSubset) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }
}

/// The join closure `S^{vee k}`: all joins of at most `k` elements of `S`,
/// linearly extended, together with the order at which the fixpoint was hit.
#[derive(Debug, Clone)]
pub struct JoinClosure {
    base: OrderedSubset,
    order: usize,
    elements: OrderedSubset,
    fixpoint_order: usize,
}

impl JoinClosure {
    pub fn base(&self) -> &OrderedSubset {
        &self.base
    }

    /// The requested closure order `k`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> &OrderedSubset {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Smallest `j <= k` with `S^{vee j} = S^{vee k}` observed during the
    /// fixpoint iteration.
    pub fn fixpoint_order(&self) -> usize {
        self.fixpoint_order
    }

    /// Renumbering of closure elements to positions `0..r`.
    pub fn renumber(&self, e: &Element) -> Option<usize> {
        self.elements.position(e)
    }
}

/// Compute `S^{vee k}` by the fixpoint iteration
/// `S^{vee (j+1)} = { s v t : s in S^{vee j}, t in S }`, deduplicating and
/// stopping early once no new element appears. This avoids enumerating all
/// multisets and terminates after at most `min(k, #S)` rounds.
pub fn join_closure(base: &OrderedSubset, k: usize) -> Result<JoinClosure> {
    if k == 0 {
        return Err(Error::BadOrder("closure order k must be >= 1".into()));
    }
    let ctx = base.context();
    let mut all: HashSet<Element> = base.iter().cloned().collect();
    let mut frontier: Vec<Element> = base.elements().to_vec();
    let mut fixpoint_order = 1;
    for round in 2..=k {
        let mut fresh = Vec::new();
        for s in &frontier {
            for t in base.iter() {
                let j = ctx.join(s, t)?;
                if !all.contains(&j) {
                    all.insert(j.clone());
                    fresh.push(j);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        fixpoint_order = round;
        frontier = fresh;
    }
    let elements = OrderedSubset::linear_extension(Arc::clone(ctx), all)?;
    Ok(JoinClosure {
        base: base.clone(),
        order: k,
        elements,
        fixpoint_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisor_subset(keys: &[u64]) -> OrderedSubset {
        let ctx = JoinSemilattice::divisor();
        OrderedSubset::linear_extension(ctx, keys.iter().map(|&k| Element::int(k))).unwrap()
    }

    #[test]
    fn linear_extension_divisor() {
        let s = divisor_subset(&[6, 2, 3]);
        let keys: Vec<_> = s.iter().map(|e| e.canonical()).collect();
        assert_eq!(keys, ["2", "3", "6"]);
    }

    #[test]
    fn linear_extension_chain() {
        let ctx = JoinSemilattice::max_chain();
        let s = OrderedSubset::linear_extension(
            ctx,
            [3u64, 1, 2].into_iter().map(Element::int),
        )
        .unwrap();
        let keys: Vec<_> = s.iter().map(|e| e.canonical()).collect();
        assert_eq!(keys, ["1", "2", "3"]);
    }

    #[test]
    fn linear_extension_antichain_uses_key_order() {
        let s = divisor_subset(&[5, 3, 2]);
        let keys: Vec<_> = s.iter().map(|e| e.canonical()).collect();
        assert_eq!(keys, ["2", "3", "5"]);
    }

    #[test]
    fn closure_one_to_six_order_two() {
        let s = divisor_subset(&[1, 2, 3, 4, 5, 6]);
        let c = join_closure(&s, 2).unwrap();
        let keys: Vec<_> = c.elements().iter().map(|e| e.canonical()).collect();
        assert_eq!(
            keys,
            ["1", "2", "3", "4", "5", "6", "10", "12", "15", "20", "30"]
        );
        assert_eq!(c.len(), 11);
    }

    #[test]
    fn closure_pair() {
        let s = divisor_subset(&[2, 3]);
        let c = join_closure(&s, 2).unwrap();
        let keys: Vec<_> = c.elements().iter().map(|e| e.canonical()).collect();
        assert_eq!(keys, ["2", "3", "6"]);
    }

    #[test]
    fn closure_fixpoint_at_set_size() {
        let s = divisor_subset(&[1, 2]);
        let c = join_closure(&s, 5).unwrap();
        let keys: Vec<_> = c.elements().iter().map(|e| e.canonical()).collect();
        assert_eq!(keys, ["1", "2"]);
        assert_eq!(c.fixpoint_order(), 1);
    }

    #[test]
    fn closure_order_zero_rejected() {
        let s = divisor_subset(&[2, 3]);
        assert!(matches!(join_closure(&s, 0), Err(Error::BadOrder(_))));
    }

    #[test]
    fn linear_extension_property_holds() {
        let s = divisor_subset(&[1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30]);
        let ctx = s.context();
        for i in 0..s.len() {
            for j in 0..s.len() {
                if ctx.leq(s.get(i), s.get(j)).unwrap() {
                    assert!(i <= j || s.get(i) == s.get(j));
                }
            }
        }
    }
}
