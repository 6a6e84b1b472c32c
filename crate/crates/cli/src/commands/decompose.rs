//! `decompose`: build and serialize the CP and/or TT decomposition.

use std::path::PathBuf;

use clap::Args;
use num_rational::BigRational;
use serde_json::json;

use jointensor_core::decomp::{cp_to_json, nested_cp_profiles, tt_to_json};
use jointensor_core::{build_cp, build_tt, Error, Scalar};

use crate::output::{envelope, write_json, write_text};
use crate::spec::{spec_echo, LatticeArgs, Mode, SetArgs};

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[command(flatten)]
    pub set: SetArgs,
    /// Tensor order d.
    #[arg(short = 'd', long = "order")]
    pub d: usize,
    /// Which decomposition to build: `cp`, `tt`, or `both`.
    #[arg(long, default_value = "cp")]
    pub kind: String,
    #[arg(long, default_value = "exact")]
    pub mode: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the boolean factor E as a 1/0 grid CSV to this path.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Order factor columns by first appearance over nested prefixes of S
    /// instead of the closure's linear extension.
    #[arg(long, default_value_t = false)]
    pub nested: bool,
}

pub fn run(args: &DecomposeArgs) -> Result<i32, Error> {
    let mode = Mode::parse(&args.mode)?;
    match mode {
        Mode::Exact => go::<BigRational>(args, mode),
        Mode::Float => go::<f64>(args, mode),
    }
}

fn go<T: Scalar>(args: &DecomposeArgs, mode: Mode) -> Result<i32, Error> {
    let ctx = args.lattice.build_context()?;
    let f = args.lattice.build_valuation()?;
    let subset = args.set.resolve(&ctx)?;
    if args.d < 2 {
        return Err(Error::BadOrder(format!(
            "tensor order must be >= 2, got {}",
            args.d
        )));
    }
    let (want_cp, want_tt) = match args.kind.as_str() {
        "cp" => (true, false),
        "tt" => (false, true),
        "both" => (true, true),
        other => {
            return Err(Error::Parse {
                what: "decomposition kind".into(),
                detail: format!("expected `cp`, `tt`, or `both`, got `{other}`"),
            })
        }
    };

    let spec = spec_echo(
        "decompose",
        &args.lattice,
        Some(&args.set),
        Some(args.d),
        mode,
        args.seed,
        json!({ "kind": args.kind, "nested": args.nested }),
    );
    let mut payload = json!({});

    let cp = if want_cp || args.profile.is_some() {
        let built = build_cp::<T>(&subset, &f, args.d)?;
        Some(if args.nested {
            reorder_nested(&built, &subset, args.d)?
        } else {
            built
        })
    } else {
        None
    };
    if want_cp {
        payload["cp"] = cp_to_json(cp.as_ref().expect("built above"));
    }
    if want_tt {
        let tt = build_tt::<T>(&subset, &f, args.d)?;
        payload["tt"] = tt_to_json(&tt);
    }

    if let Some(profile_path) = &args.profile {
        let cp = cp.as_ref().expect("built above");
        let mut text = String::new();
        text.push_str(&format!(
            "# schema=jointensor.profile.v1 version={} spec={}\n",
            crate::output::VERSION,
            serde_json::to_string(&spec).expect("valid JSON")
        ));
        text.push_str(&format!(
            "# rows={}\n# columns={}\n",
            subset
                .iter()
                .map(|e| e.canonical())
                .collect::<Vec<_>>()
                .join(","),
            cp.columns()
                .iter()
                .map(|e| e.canonical())
                .collect::<Vec<_>>()
                .join(","),
        ));
        for i in 0..cp.n() {
            let row: Vec<&str> = (0..cp.term_count())
                .map(|k| if cp.factor_entry(i, k) { "1" } else { "0" })
                .collect();
            text.push_str(&row.join(","));
            text.push('\n');
        }
        write_text(Some(profile_path), &text)?;
    }

    write_json(
        args.out.as_deref(),
        &envelope("jointensor.decompose.v1", spec, payload),
    )?;
    Ok(0)
}

/// Rebuild the CP column order so columns appear in the nested-prefix order
/// of the base set, matching profile plots over growing n.
fn reorder_nested<T: Scalar>(
    cp: &jointensor_core::PolyadicDecomposition<T>,
    subset: &jointensor_core::OrderedSubset,
    d: usize,
) -> Result<jointensor_core::PolyadicDecomposition<T>, Error> {
    let profiles = nested_cp_profiles(subset.context(), subset.elements(), d)?;
    let order: &[jointensor_core::Element] = &profiles.last().expect("nonempty").columns;
    let perm: Vec<usize> = order
        .iter()
        .map(|e| {
            cp.closure()
                .renumber(e)
                .ok_or_else(|| Error::BadShape("nested order misses a closure element".into()))
        })
        .collect::<Result<_, _>>()?;
    cp.with_column_order(&perm)
}
