//! Explicit finite posets loaded from a relation, with derived join tables.
//!
//! The file format is JSON: `{ "elements": ["a", "b", ...], "leq": [["a","b"], ...] }`.
//! The relation may be any generating set; the reflexive-transitive closure is
//! computed on load. Joins are derived as unique minimal common upper bounds
//! and any defects (missing or ambiguous joins) are recorded so that a
//! validation pass can report them instead of the loader guessing.

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice::element::Element;

/// A defect that disqualifies an explicit poset from being a join semilattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinDefect {
    NoUpperBound { x: String, y: String },
    AmbiguousJoin { x: String, y: String, minimal_upper_bounds: Vec<String> },
}

impl fmt::Display for JoinDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinDefect::NoUpperBound { x, y } => {
                write!(f, "elements `{x}` and `{y}` have no common upper bound")
            }
            JoinDefect::AmbiguousJoin {
                x,
                y,
                minimal_upper_bounds,
            } => write!(
                f,
                "elements `{x}` and `{y}` have no least upper bound (minimal upper bounds: {})",
                minimal_upper_bounds.join(", ")
            ),
        }
    }
}

/// A finite poset given by an explicit universe and order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitPoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,          // m*m, reflexive-transitive closure
    join: Vec<Option<u32>>,  // m*m
    defects: Vec<JoinDefect>,
}

#[derive(Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    leq: Vec<(String, String)>,
}

impl ExplicitPoset {
    /// Build from a universe and a generating set of order pairs.
    /// Cycles (antisymmetry violations) are rejected.
    pub fn from_generators(names: Vec<String>, pairs: &[(String, String)]) -> Result<Self> {
        let mut poset = Self::closure_only(names, pairs)?;
        poset.derive_joins();
        Ok(poset)
    }

    /// Build with a caller-supplied join table instead of deriving one.
    ///
    /// No semilattice laws are enforced here; this exists so that candidate
    /// join tables can be run through `validate_semilattice` and have their
    /// violations reported.
    pub fn with_join_table(
        names: Vec<String>,
        pairs: &[(String, String)],
        table: &[((String, String), String)],
    ) -> Result<Self> {
        let mut poset = Self::closure_only(names, pairs)?;
        let m = poset.names.len();
        poset.join = vec![None; m * m];
        for ((x, y), j) in table {
            let xi = poset.idx_of(x)?;
            let yi = poset.idx_of(y)?;
            let ji = poset.idx_of(j)?;
            poset.join[xi * m + yi] = Some(ji as u32);
        }
        Ok(poset)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "explicit poset JSON".into(),
            detail: format!("{e}"),
        })?;
        Self::from_generators(file.elements, &file.leq)
    }

    fn closure_only(names: Vec<String>, pairs: &[(String, String)]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::NotAPartialOrder("empty universe".into()));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::NotAPartialOrder(format!(
                    "duplicate element name `{name}`"
                )));
            }
        }
        let m = names.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            leq[i * m + i] = true;
        }
        for (a, b) in pairs {
            let ai = *index
                .get(a)
                .ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let bi = *index
                .get(b)
                .ok_or_else(|| Error::UnknownElement(b.clone()))?;
            leq[ai * m + bi] = true;
        }
        // Warshall transitive closure.
        for k in 0..m {
            for i in 0..m {
                if leq[i * m + k] {
                    for j in 0..m {
                        if leq[k * m + j] {
                            leq[i * m + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if leq[i * m + j] && leq[j * m + i] {
                    return Err(Error::NotAPartialOrder(format!(
                        "cycle through `{}` and `{}`",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(ExplicitPoset {
            names,
            index,
            leq,
            join: Vec::new(),
            defects: Vec::new(),
        })
    }

    fn derive_joins(&mut self) {
        let m = self.names.len();
        self.join = vec![None; m * m];
        self.defects.clear();
        for x in 0..m {
            for y in x..m {
                let ubs: Vec<usize> = (0..m)
                    .filter(|&z| self.leq[x * m + z] && self.leq[y * m + z])
                    .collect();
                let minimal: Vec<usize> = ubs
                    .iter()
                    .copied()
                    .filter(|&u| !ubs.iter().any(|&v| v != u && self.leq[v * m + u]))
                    .collect();
                match (ubs.is_empty(), minimal.len()) {
                    (true, _) => self.defects.push(JoinDefect::NoUpperBound {
                        x: self.names[x].clone(),
                        y: self.names[y].clone(),
                    }),
                    (false, 1) => {
                        let j = minimal[0] as u32;
                        self.join[x * m + y] = Some(j);
                        self.join[y * m + x] = Some(j);
                    }
                    (false, _) => self.defects.push(JoinDefect::AmbiguousJoin {
                        x: self.names[x].clone(),
                        y: self.names[y].clone(),
                        minimal_upper_bounds: minimal
                            .iter()
                            .map(|&u| self.names[u].clone())
                            .collect(),
                    }),
                }
            }
        }
    }

    /// The dual poset (order reversed). Joins of the dual are meets of the
    /// original, which is the supported route to meet-side computations.
    pub fn dual(&self) -> Self {
        let m = self.names.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = self.leq[j * m + i];
            }
        }
        let mut dual = ExplicitPoset {
            names: self.names.clone(),
            index: self.index.clone(),
            leq,
            join: Vec::new(),
            defects: Vec::new(),
        };
        dual.derive_joins();
        dual
    }

    pub fn defects(&self) -> &[JoinDefect] {
        &self.defects
    }

    pub fn is_semilattice(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn universe(&self) -> Vec<Element> {
        self.names.iter().map(Element::name).collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn idx_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub(crate) fn member_index(&self, x: &Element) -> Result<usize> {
        match x {
            Element::Name(s) => self.idx_of(s),
            Element::Int(v) => Err(Error::UnknownElement(v.to_string())),
        }
    }

    pub(crate) fn leq_elems(&self, x: &Element, y: &Element) -> Result<bool> {
        let xi = self.member_index(x)?;
        let yi = self.member_index(y)?;
        Ok(self.leq[xi * self.names.len() + yi])
    }

    pub(crate) fn join_elems(&self, x: &Element, y: &Element) -> Result<Element> {
        let xi = self.member_index(x)?;
        let yi = self.member_index(y)?;
        match self.join[xi * self.names.len() + yi] {
            Some(j) => Ok(Element::name(&self.names[j as usize])),
            None => Err(Error::NotASemilattice(format!(
                "no unique least upper bound for `{}` and `{}`",
                self.names[xi], self.names[yi]
            ))),
        }
    }
}
