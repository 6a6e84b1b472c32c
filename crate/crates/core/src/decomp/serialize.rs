//! JSON serialization of decompositions.
//!
//! Polyadic form: `{n, d, r, mode, c: [...], E: {rows, cols, nnz_coords}}`.
//! Tensor-train form: `{n, d, mode, ranks, cores: [{k, shape, triplets, values?}]}`
//! with triplets `(row, mode-index, col)` sorted lexicographically; only the
//! middle core carries a parallel `values` array. Exact-mode scalars are
//! serialized as exact strings, float-mode scalars as JSON numbers.

use serde_json::{json, Value};

use crate::decomp::cp::PolyadicDecomposition;
use crate::decomp::tt::TensorTrain;
use crate::error::{Error, Result};
use crate::scalar::{ArithMode, Scalar};

fn scalar_to_json<T: Scalar>(v: &T) -> Value {
    match T::mode() {
        ArithMode::Exact => Value::String(v.render()),
        ArithMode::Float => json!(v.to_f64()),
    }
}

fn scalar_from_json<T: Scalar>(v: &Value) -> Result<T> {
    match v {
        Value::String(s) => T::parse_text(s),
        Value::Number(n) => {
            let f = n.as_f64().ok_or_else(|| Error::BadValue(format!("{n}")))?;
            match T::mode() {
                ArithMode::Float => T::parse_text(&format!("{f}")),
                ArithMode::Exact => Err(Error::ModeMismatch {
                    expected: "exact (string-encoded scalar)",
                    found: format!("number {f}"),
                }),
            }
        }
        other => Err(Error::Parse {
            what: "scalar".into(),
            detail: format!("unexpected JSON value {other}"),
        }),
    }
}

fn expect_mode<T: Scalar>(v: &Value) -> Result<()> {
    let found = v
        .get("mode")
        .and_then(Value::as_str)
        .unwrap_or("<missing>");
    if found != T::mode().name() {
        return Err(Error::ModeMismatch {
            expected: T::mode().name(),
            found: found.to_string(),
        });
    }
    Ok(())
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name).ok_or_else(|| Error::Parse {
        what: "decomposition JSON".into(),
        detail: format!("missing field `{name}`"),
    })
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse {
            what: "decomposition JSON".into(),
            detail: format!("field `{name}` is not an unsigned integer"),
        })
}

pub fn cp_to_json<T: Scalar>(cp: &PolyadicDecomposition<T>) -> Value {
    let r = cp.term_count();
    let n = cp.n();
    let mut coords = Vec::new();
    for i in 0..n {
        for j in 0..r {
            if cp.factor_entry(i, j) {
                coords.push(json!([i, j]));
            }
        }
    }
    json!({
        "n": n,
        "d": cp.d(),
        "r": r,
        "mode": T::mode().name(),
        "c": cp.coefficients().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "E": { "rows": n, "cols": r, "nnz_coords": coords },
    })
}

/// A self-contained polyadic snapshot, evaluable without lattice context.
#[derive(Debug, Clone)]
pub struct CpSerial<T> {
    pub n: usize,
    pub d: usize,
    pub coefficients: Vec<T>,
    factor: Vec<bool>,
}

impl<T: Scalar> CpSerial<T> {
    pub fn from_json(v: &Value) -> Result<Self> {
        expect_mode::<T>(v)?;
        let n = usize_field(v, "n")?;
        let d = usize_field(v, "d")?;
        let r = usize_field(v, "r")?;
        let c_json = field(v, "c")?
            .as_array()
            .ok_or_else(|| Error::Parse {
                what: "decomposition JSON".into(),
                detail: "`c` is not an array".into(),
            })?;
        if c_json.len() != r {
            return Err(Error::BadShape(format!(
                "coefficient count {} != r = {r}",
                c_json.len()
            )));
        }
        let coefficients = c_json
            .iter()
            .map(scalar_from_json)
            .collect::<Result<Vec<T>>>()?;
        let e = field(v, "E")?;
        let mut factor = vec![false; n * r];
        for coord in field(e, "nnz_coords")?.as_array().into_iter().flatten() {
            let pair = coord.as_array().ok_or_else(|| Error::Parse {
                what: "decomposition JSON".into(),
                detail: "nnz coordinate is not a pair".into(),
            })?;
            let (i, j) = (
                pair[0].as_u64().unwrap_or(u64::MAX) as usize,
                pair[1].as_u64().unwrap_or(u64::MAX) as usize,
            );
            if i >= n || j >= r {
                return Err(Error::BadShape(format!("coordinate ({i},{j}) out of range")));
            }
            factor[i * r + j] = true;
        }
        Ok(CpSerial {
            n,
            d,
            coefficients,
            factor,
        })
    }

    pub fn evaluate(&self, idx: &[usize]) -> Result<T> {
        if idx.len() != self.d || idx.iter().any(|&i| i >= self.n) {
            return Err(Error::BadIndex {
                idx: idx.to_vec(),
                n: self.n,
                d: self.d,
            });
        }
        let r = self.coefficients.len();
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

pub fn tt_to_json<T: Scalar>(tt: &TensorTrain<T>) -> Value {
    let n = tt.n();
    let q = tt.d() / 2;
    let mut cores = Vec::new();

    // G_1: unit row selector.
    let r1 = tt.closures()[0].len();
    let g1: Vec<Value> = (0..n)
        .map(|i| {
            let c = tt.closures()[0]
                .renumber(tt.base().get(i))
                .expect("base in closure");
            json!([0, i, c])
        })
        .collect();
    cores.push(json!({ "k": 1, "shape": [1, n, r1], "triplets": g1 }));

    for (k, t) in (2..=q).zip(tt.transitions()) {
        let mut triplets = Vec::with_capacity(t.from * n);
        for a in 0..t.from {
            for i in 0..n {
                triplets.push(json!([a, i, t.next[i * t.from + a]]));
            }
        }
        cores.push(json!({
            "k": k,
            "shape": [t.from, n, t.to],
            "triplets": triplets,
        }));
    }

    let m = tt.middle();
    let mut triplets = Vec::new();
    let mut values = Vec::new();
    for a in 0..m.left {
        for i in 0..n {
            for b in 0..m.right {
                let v = &m.values[(a * n + i) * m.right + b];
                if !v.is_zero() {
                    triplets.push(json!([a, i, b]));
                    values.push(scalar_to_json(v));
                }
            }
        }
    }
    cores.push(json!({
        "k": q + 1,
        "shape": [m.left, n, m.right],
        "triplets": triplets,
        "values": values,
    }));

    json!({
        "n": n,
        "d": tt.d(),
        "mode": T::mode().name(),
        "ranks": tt.ranks(),
        "cores": cores,
    })
}

/// A self-contained tensor-train snapshot, evaluable without lattice context.
#[derive(Debug, Clone)]
pub struct TtSerial<T> {
    pub n: usize,
    pub d: usize,
    pub ranks: Vec<usize>,
    pos1: Vec<usize>,
    transitions: Vec<(usize, Vec<usize>)>, // (from, next[i*from + a])
    middle: (usize, usize, Vec<T>),        // (left, right, dense values)
}

impl<T: Scalar> TtSerial<T> {
    pub fn from_json(v: &Value) -> Result<Self> {
        expect_mode::<T>(v)?;
        let n = usize_field(v, "n")?;
        let d = usize_field(v, "d")?;
        let ranks: Vec<usize> = field(v, "ranks")?
            .as_array()
            .into_iter()
            .flatten()
            .map(|x| x.as_u64().unwrap_or(0) as usize)
            .collect();
        let cores = field(v, "cores")?.as_array().ok_or_else(|| Error::Parse {
            what: "tensor-train JSON".into(),
            detail: "`cores` is not an array".into(),
        })?;
        let q = d / 2;
        if cores.len() != q + 1 {
            return Err(Error::BadShape(format!(
                "expected {} stored cores, found {}",
                q + 1,
                cores.len()
            )));
        }
        let shape_of = |core: &Value| -> Result<[usize; 3]> {
            let s = field(core, "shape")?.as_array().cloned().unwrap_or_default();
            if s.len() != 3 {
                return Err(Error::BadShape("core shape must have 3 entries".into()));
            }
            Ok([
                s[0].as_u64().unwrap_or(0) as usize,
                s[1].as_u64().unwrap_or(0) as usize,
                s[2].as_u64().unwrap_or(0) as usize,
            ])
        };
        let triplets_of = |core: &Value| -> Result<Vec<[usize; 3]>> {
            field(core, "triplets")?
                .as_array()
                .into_iter()
                .flatten()
                .map(|t| {
                    let a = t.as_array().ok_or_else(|| Error::Parse {
                        what: "tensor-train JSON".into(),
                        detail: "triplet is not an array".into(),
                    })?;
                    Ok([
                        a[0].as_u64().unwrap_or(0) as usize,
                        a[1].as_u64().unwrap_or(0) as usize,
                        a[2].as_u64().unwrap_or(0) as usize,
                    ])
                })
                .collect()
        };

        let mut pos1 = vec![0usize; n];
        for [_, i, c] in triplets_of(&cores[0])? {
            if i >= n {
                return Err(Error::BadShape(format!("mode index {i} out of range")));
            }
            pos1[i] = c;
        }

        let mut transitions = Vec::new();
        for core in &cores[1..q.max(1)] {
            let [from, cn, _to] = shape_of(core)?;
            if cn != n {
                return Err(Error::BadShape("core mode dimension mismatch".into()));
            }
            let mut next = vec![0usize; n * from];
            for [a, i, c] in triplets_of(core)? {
                if a >= from || i >= n {
                    return Err(Error::BadShape("triplet out of range".into()));
                }
                next[i * from + a] = c;
            }
            transitions.push((from, next));
        }

        let mid = &cores[q];
        let [left, cn, right] = shape_of(mid)?;
        if cn != n {
            return Err(Error::BadShape("middle core mode dimension mismatch".into()));
        }
        let value_json = field(mid, "values")?.as_array().cloned().unwrap_or_default();
        let triples = triplets_of(mid)?;
        if triples.len() != value_json.len() {
            return Err(Error::BadShape(
                "middle core triplets and values differ in length".into(),
            ));
        }
        let mut values = vec![T::zero(); left * n * right];
        for ([a, i, b], v) in triples.into_iter().zip(&value_json) {
            if a >= left || i >= n || b >= right {
                return Err(Error::BadShape("middle triplet out of range".into()));
            }
            values[(a * n + i) * right + b] = scalar_from_json(v)?;
        }

        Ok(TtSerial {
            n,
            d,
            ranks,
            pos1,
            transitions,
            middle: (left, right, values),
        })
    }

    pub fn evaluate(&self, idx: &[usize]) -> Result<T> {
        if idx.len() != self.d || idx.iter().any(|&i| i >= self.n) {
            return Err(Error::BadIndex {
                idx: idx.to_vec(),
                n: self.n,
                d: self.d,
            });
        }
        let q = self.d / 2;
        let (left, right, values) = (&self.middle.0, &self.middle.1, &self.middle.2);
        let mut a = self.pos1[idx[0]];
        for k in 2..=q {
            let (from, next) = &self.transitions[k - 2];
            a = next[idx[k - 1] * from + a];
        }
        if self.d == 2 {
            return Ok(values[(a * self.n + idx[1]) * right].clone());
        }
        let mut b = self.pos1[idx[self.d - 1]];
        for k in ((q + 2)..=(self.d - 1)).rev() {
            let m = self.d - k + 1;
            let (from, next) = &self.transitions[m - 2];
            b = next[idx[k - 1] * from + b];
        }
        if a >= *left || b >= *right {
            return Err(Error::BadShape("walk escaped the middle core".into()));
        }
        Ok(values[(a * self.n + idx[q]) * right + b].clone())
    }
}
