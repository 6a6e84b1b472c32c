//! Factor-matrix profiles over nested index sets.
//!
//! For a nested family `S^(1) c S^(2) c ...` (prefixes of one element list)
//! the closures are nested too, so ordering columns by first appearance makes
//! each factor matrix a leading submatrix of the next. This is the ordering
//! used for profile plots of the boolean factor `E`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::Result;
use crate::lattice::{join_closure, Element, JoinSemilattice, OrderedSubset};

/// The boolean factor of one prefix, with columns in nested appearance order.
#[derive(Debug, Clone)]
pub struct CpProfile {
    pub n: usize,
    pub rows: Vec<Element>,
    pub columns: Vec<Element>,
    bits: Vec<bool>,
}

impl CpProfile {
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.columns.len() + j]
    }

    /// True when `self` appears as the top-left block of `larger`.
    pub fn is_leading_submatrix_of(&self, larger: &CpProfile) -> bool {
        if self.rows.len() > larger.rows.len() || self.columns.len() > larger.columns.len() {
            return false;
        }
        for i in 0..self.rows.len() {
            for j in 0..self.columns.len() {
                if self.entry(i, j) != larger.entry(i, j) {
                    return false;
                }
            }
        }
        self.rows == larger.rows[..self.rows.len()]
            && self.columns == larger.columns[..self.columns.len()]
    }
}

/// Profiles of the order-`d` factor matrices for every prefix of `elems`,
/// columns ordered so new closure elements are appended as `n` grows.
pub fn nested_cp_profiles(
    ctx: &Arc<JoinSemilattice>,
    elems: &[Element],
    d: usize,
) -> Result<Vec<CpProfile>> {
    let mut seen: HashSet<Element> = HashSet::new();
    let mut column_order: Vec<Element> = Vec::new();
    let mut out = Vec::with_capacity(elems.len());
    for n in 1..=elems.len() {
        let prefix =
            OrderedSubset::linear_extension(Arc::clone(ctx), elems[..n].iter().cloned())?;
        let closure = join_closure(&prefix, d)?;
        for e in closure.elements().iter() {
            if seen.insert(e.clone()) {
                column_order.push(e.clone());
            }
        }
        let rows: Vec<Element> = prefix.elements().to_vec();
        let cols: Vec<Element> = column_order
            .iter()
            .filter(|e| closure.renumber(e).is_some())
            .cloned()
            .collect();
        let mut bits = Vec::with_capacity(rows.len() * cols.len());
        for x in &rows {
            for y in &cols {
                bits.push(ctx.leq(x, y)?);
            }
        }
        out.push(CpProfile {
            n,
            rows,
            columns: cols,
            bits,
        });
    }
    Ok(out)
}
