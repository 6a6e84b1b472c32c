//! Valuation functions `f` mapping lattice elements to scalars.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::Element;
use crate::scalar::Scalar;

/// The function `f` a join tensor is built against.
///
/// `Identity`, `Power`, and `Reciprocal` need numeric element keys (explicit
/// posets qualify when their labels parse as integers). `Table` must cover
/// every element it is asked about; coverage over a closure is checked at
/// build time by the builders themselves.
#[derive(Debug, Clone)]
pub enum Valuation {
    Identity,
    Constant(BigRational),
    Power(i32),
    Reciprocal,
    Table(ValuationTable),
}

impl Valuation {
    /// Evaluate `f(x)` in the scalar mode chosen by `T`.
    pub fn eval<T: Scalar>(&self, x: &Element) -> Result<T> {
        match self {
            Valuation::Identity => Ok(T::from_biguint(&numeric(x, "identity")?)),
            Valuation::Constant(q) => Ok(T::from_rational(q)),
            Valuation::Power(k) => T::from_biguint(&numeric(x, "power")?).powi_checked(*k),
            Valuation::Reciprocal => {
                T::from_biguint(&numeric(x, "reciprocal")?).recip_checked()
            }
            Valuation::Table(t) => t.eval(x),
        }
    }

    /// Short label used in run provenance.
    pub fn label(&self) -> String {
        match self {
            Valuation::Identity => "identity".into(),
            Valuation::Constant(q) => format!("constant:{}", q),
            Valuation::Power(k) => format!("power:{k}"),
            Valuation::Reciprocal => "reciprocal".into(),
            Valuation::Table(t) => format!("table:{}", t.source),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn numeric(x: &Element, kind: &str) -> Result<num_bigint::BigUint> {
    x.numeric().ok_or_else(|| {
        Error::InvalidValuation(format!(
            "{kind} valuation requires a numeric element key, got `{x}`"
        ))
    })
}

/// A valuation given by an explicit `element -> value` table. Values are
/// kept as raw text and parsed in the arithmetic mode of each evaluation.
#[derive(Debug, Clone)]
pub struct ValuationTable {
    entries: HashMap<String, String>,
    source: String,
}

impl ValuationTable {
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (String, String)>,
        source: impl Into<String>,
    ) -> Self {
        ValuationTable {
            entries: pairs.into_iter().collect(),
            source: source.into(),
        }
    }

    /// Load a CSV file with header `element,value`.
    pub fn load_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines();
        match lines.next().map(str::trim) {
            Some("element,value") => {}
            other => {
                return Err(Error::Parse {
                    what: format!("valuation table {}", path.display()),
                    detail: format!(
                        "expected header `element,value`, found {:?}",
                        other.unwrap_or("")
                    ),
                })
            }
        }
        let mut entries = HashMap::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(',').ok_or_else(|| Error::Parse {
                what: format!("valuation table {}", path.display()),
                detail: format!("line {}: missing comma", lineno + 2),
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ValuationTable {
            entries,
            source: path.display().to_string(),
        })
    }

    fn eval<T: Scalar>(&self, x: &Element) -> Result<T> {
        let key = x.canonical();
        let raw = self
            .entries
            .get(&key)
            .ok_or_else(|| Error::MissingValuation(key.clone()))?;
        T::parse_text(raw)
    }
}
