//! Run-spec parsing: lattice, index set, valuation, and arithmetic mode,
//! plus the provenance echo embedded in every output file.

use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde_json::{json, Value};

use jointensor_core::scalar::parse_rational;
use jointensor_core::{
    Element, Error, ExplicitPoset, JoinSemilattice, OrderedSubset, Valuation, ValuationTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse {
                what: "arithmetic mode".into(),
                detail: format!("expected `exact` or `float`, got `{other}`"),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Lattice and valuation selectors shared by every subcommand.
#[derive(Debug, Args, Clone)]
pub struct LatticeArgs {
    /// Lattice: `divisor`, `max`, or `explicit:<poset.json>`.
    #[arg(long, default_value = "divisor")]
    pub lattice: String,

    /// Valuation: `identity`, `constant:<q>`, `power:<k>`, `reciprocal`,
    /// or `table:<file.csv>`.
    #[arg(long = "f", default_value = "identity")]
    pub valuation: String,
}

/// Index-set selector: a range `1..n`, an explicit list, or a file.
#[derive(Debug, Args, Clone)]
pub struct SetArgs {
    /// Use S = {1..n} (for explicit lattices: the first n declared elements).
    #[arg(long)]
    pub range: Option<usize>,

    /// Comma-separated element keys.
    #[arg(long, conflicts_with = "range")]
    pub list: Option<String>,

    /// File with one element key per line.
    #[arg(long = "set-file", conflicts_with_all = ["range", "list"])]
    pub set_file: Option<PathBuf>,
}

impl LatticeArgs {
    pub fn build_context(&self) -> Result<Arc<JoinSemilattice>, Error> {
        match self.lattice.as_str() {
            "divisor" => Ok(JoinSemilattice::divisor()),
            "max" | "max-chain" => Ok(JoinSemilattice::max_chain()),
            other => match other.strip_prefix("explicit:") {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    JoinSemilattice::explicit(ExplicitPoset::from_json_str(&text)?)
                }
                None => Err(Error::Parse {
                    what: "lattice selector".into(),
                    detail: format!(
                        "expected `divisor`, `max`, or `explicit:<path>`, got `{other}`"
                    ),
                }),
            },
        }
    }

    pub fn build_valuation(&self) -> Result<Valuation, Error> {
        let spec = self.valuation.as_str();
        match spec {
            "identity" => Ok(Valuation::Identity),
            "reciprocal" => Ok(Valuation::Reciprocal),
            other => {
                if let Some(v) = other.strip_prefix("constant:") {
                    return Ok(Valuation::Constant(parse_rational(v)?));
                }
                if let Some(k) = other.strip_prefix("power:") {
                    let k: i32 = k.parse().map_err(|e| Error::Parse {
                        what: "power exponent".into(),
                        detail: format!("{e}"),
                    })?;
                    return Ok(Valuation::Power(k));
                }
                if let Some(path) = other.strip_prefix("table:") {
                    return Ok(Valuation::Table(ValuationTable::load_csv(
                        std::path::Path::new(path),
                    )?));
                }
                Err(Error::Parse {
                    what: "valuation selector".into(),
                    detail: format!("unrecognized valuation `{other}`"),
                })
            }
        }
    }
}

impl SetArgs {
    pub fn resolve(
        &self,
        ctx: &Arc<JoinSemilattice>,
    ) -> Result<OrderedSubset, Error> {
        let elements: Vec<Element> = if let Some(n) = self.range {
            if n == 0 {
                return Err(Error::BadShape("range must be at least 1".into()));
            }
            range_elements(ctx, n)?
        } else if let Some(list) = &self.list {
            list.split(',')
                .map(|tok| parse_element(ctx, tok.trim()))
                .collect::<Result<_, _>>()?
        } else if let Some(path) = &self.set_file {
            std::fs::read_to_string(path)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(|tok| parse_element(ctx, tok))
                .collect::<Result<_, _>>()?
        } else {
            return Err(Error::BadShape(
                "one of --range, --list, --set-file is required".into(),
            ));
        };
        OrderedSubset::linear_extension(Arc::clone(ctx), elements)
    }

    pub fn describe(&self) -> String {
        if let Some(n) = self.range {
            format!("range:1..{n}")
        } else if let Some(list) = &self.list {
            format!("list:{list}")
        } else if let Some(path) = &self.set_file {
            format!("file:{}", path.display())
        } else {
            "unset".into()
        }
    }
}

pub fn range_elements(
    ctx: &Arc<JoinSemilattice>,
    n: usize,
) -> Result<Vec<Element>, Error> {
    match ctx.as_ref() {
        JoinSemilattice::Explicit(p) => {
            let universe = p.universe();
            if n > universe.len() {
                return Err(Error::BadShape(format!(
                    "range {n} exceeds the explicit universe of {} elements",
                    universe.len()
                )));
            }
            Ok(universe[..n].to_vec())
        }
        _ => Ok((1..=n as u64).map(Element::int).collect()),
    }
}

fn parse_element(ctx: &Arc<JoinSemilattice>, token: &str) -> Result<Element, Error> {
    match ctx.as_ref() {
        JoinSemilattice::Explicit(_) => Ok(Element::name(token)),
        _ => {
            let v: num_bigint::BigUint = token.parse().map_err(|e| Error::Parse {
                what: format!("integer element `{token}`"),
                detail: format!("{e}"),
            })?;
            Ok(Element::big(v))
        }
    }
}

/// The provenance block embedded verbatim into every output file.
pub fn spec_echo(
    command: &str,
    lattice: &LatticeArgs,
    set: Option<&SetArgs>,
    d: Option<usize>,
    mode: Mode,
    seed: u64,
    extra: Value,
) -> Value {
    let mut spec = json!({
        "command": command,
        "lattice": lattice.lattice,
        "f": lattice.valuation,
        "mode": mode.name(),
        "seed": seed,
    });
    if let Some(set) = set {
        spec["set"] = json!(set.describe());
    }
    if let Some(d) = d {
        spec["d"] = json!(d);
    }
    if let Value::Object(extra) = extra {
        for (k, v) in extra {
            spec[k] = v;
        }
    }
    spec
}
