//! Semilattice law validation with a violation report.

use std::sync::Arc;

use rand::prelude::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::context::JoinSemilattice;
use crate::lattice::element::Element;
use crate::lattice::subset::{join_closure, OrderedSubset};

const EXHAUSTIVE_LIMIT: usize = 12;
const SAMPLE_TRIPLES: usize = 2000;
const SAMPLE_SEED: u64 = 0xA11CE;

#[derive(Debug, Clone)]
pub enum Violation {
    NotASemilattice { detail: String },
    Commutativity { x: Element, y: Element },
    Associativity { x: Element, y: Element, z: Element },
    Idempotence { x: Element },
    UpperBound { x: Element, y: Element },
    Minimality { x: Element, y: Element, witness: Element },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotASemilattice { detail } => write!(f, "not a semilattice: {detail}"),
            Violation::Commutativity { x, y } => {
                write!(f, "join({x},{y}) != join({y},{x})")
            }
            Violation::Associativity { x, y, z } => {
                write!(f, "join(join({x},{y}),{z}) != join({x},join({y},{z}))")
            }
            Violation::Idempotence { x } => write!(f, "join({x},{x}) != {x}"),
            Violation::UpperBound { x, y } => {
                write!(f, "join({x},{y}) is not an upper bound of both")
            }
            Violation::Minimality { x, y, witness } => write!(
                f,
                "join({x},{y}) is not minimal: `{witness}` is a smaller common upper bound"
            ),
        }
    }
}

/// Outcome of validating semilattice laws over a subset and its closure.
#[derive(Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub checked_triples: usize,
    pub exhaustive: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check join totality on the closure of `elems`, the algebraic laws
/// (commutativity, associativity, idempotence; exhaustive for up to 12
/// closure elements, seeded sampling above), the upper-bound half of the
/// least-upper-bound property, and (for explicit posets) minimality against
/// the full universe. All failures are collected, never raised.
pub fn validate_semilattice(
    ctx: &Arc<JoinSemilattice>,
    elems: &OrderedSubset,
) -> ValidationReport {
    let mut violations = Vec::new();

    // Totality: closing the set exercises every join the builders will need.
    let universe: Vec<Element> = match join_closure(elems, elems.len().max(1)) {
        Ok(c) => c.elements().elements().to_vec(),
        Err(e) => {
            violations.push(Violation::NotASemilattice {
                detail: e.to_string(),
            });
            elems.elements().to_vec()
        }
    };
    let m = universe.len();

    for x in &universe {
        match ctx.join(x, x) {
            Ok(j) if &j == x => {}
            Ok(_) => violations.push(Violation::Idempotence { x: x.clone() }),
            Err(e) => violations.push(Violation::NotASemilattice {
                detail: e.to_string(),
            }),
        }
    }

    for i in 0..m {
        for j in i..m {
            let (x, y) = (&universe[i], &universe[j]);
            let xy = match ctx.join(x, y) {
                Ok(v) => v,
                Err(e) => {
                    violations.push(Violation::NotASemilattice {
                        detail: e.to_string(),
                    });
                    continue;
                }
            };
            match ctx.join(y, x) {
                Ok(yx) if yx == xy => {}
                Ok(_) => violations.push(Violation::Commutativity {
                    x: x.clone(),
                    y: y.clone(),
                }),
                Err(e) => violations.push(Violation::NotASemilattice {
                    detail: e.to_string(),
                }),
            }
            let is_ub = ctx.leq(x, &xy).unwrap_or(false) && ctx.leq(y, &xy).unwrap_or(false);
            if !is_ub {
                violations.push(Violation::UpperBound {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
            if let JoinSemilattice::Explicit(p) = ctx.as_ref() {
                // Minimality against the declared universe, exhaustively.
                for z in p.universe() {
                    let z_ub = ctx.leq(x, &z).unwrap_or(false) && ctx.leq(y, &z).unwrap_or(false);
                    if z_ub && !ctx.leq(&xy, &z).unwrap_or(false) {
                        violations.push(Violation::Minimality {
                            x: x.clone(),
                            y: y.clone(),
                            witness: z,
                        });
                    }
                }
            }
        }
    }

    let exhaustive = m <= EXHAUSTIVE_LIMIT;
    let mut checked_triples = 0;
    let check_triple = |x: &Element, y: &Element, z: &Element, out: &mut Vec<Violation>| {
        let left = ctx
            .join(x, y)
            .and_then(|xy| ctx.join(&xy, z));
        let right = ctx
            .join(y, z)
            .and_then(|yz| ctx.join(x, &yz));
        match (left, right) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => out.push(Violation::Associativity {
                x: x.clone(),
                y: y.clone(),
                z: z.clone(),
            }),
            _ => out.push(Violation::NotASemilattice {
                detail: format!("join undefined inside triple ({x},{y},{z})"),
            }),
        }
    };
    if exhaustive {
        for x in &universe {
            for y in &universe {
                for z in &universe {
                    check_triple(x, y, z, &mut violations);
                    checked_triples += 1;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..SAMPLE_TRIPLES {
            let x = universe.choose(&mut rng).unwrap();
            let y = universe.choose(&mut rng).unwrap();
            let z = universe.choose(&mut rng).unwrap();
            check_triple(x, y, z, &mut violations);
            checked_triples += 1;
        }
    }

    ValidationReport {
        violations,
        checked_triples,
        exhaustive,
    }
}
