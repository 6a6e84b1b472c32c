//! `rank`: closure-based rank bounds plus exact unfolding-rank verification
//! within the dense guard.

use std::path::PathBuf;

use clap::Args;
use num_rational::BigRational;
use serde_json::{json, Value};

use jointensor_core::{
    exact_rank, lcm_tt_rank_reference, materialize_dense_guarded, numeric_rank, rank_bounds,
    unfolding, Error, JoinSemilattice, Valuation, DEFAULT_DENSE_GUARD,
};

use crate::output::{envelope, write_json};
use crate::spec::{spec_echo, LatticeArgs, Mode, SetArgs};

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(short = 'd', long = "order")]
    pub d: usize,
    #[arg(long, default_value = "exact")]
    pub mode: String,
    /// Dense-entry guard for exact verification; above it only bounds are
    /// reported.
    #[arg(long, default_value_t = DEFAULT_DENSE_GUARD)]
    pub guard: u128,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &RankArgs) -> Result<i32, Error> {
    let mode = Mode::parse(&args.mode)?;
    let ctx = args.lattice.build_context()?;
    let f = args.lattice.build_valuation()?;
    let subset = args.set.resolve(&ctx)?;
    let n = subset.len();

    let report = match mode {
        Mode::Exact => rank_bounds::<BigRational>(&subset, &f, args.d)?,
        Mode::Float => rank_bounds::<f64>(&subset, &f, args.d)?,
    };

    // Exact unfolding ranks, when the dense tensor fits under the guard.
    let mut guard_exceeded = false;
    let mut per_k: Option<Vec<usize>> = None;
    let dense_result = match mode {
        Mode::Exact => materialize_dense_guarded::<BigRational>(&subset, &f, args.d, args.guard)
            .map(|dense| {
                (1..args.d)
                    .map(|k| exact_rank(unfolding(&dense, k).unwrap().matrix()).unwrap())
                    .collect::<Vec<_>>()
            }),
        Mode::Float => materialize_dense_guarded::<f64>(&subset, &f, args.d, args.guard).map(
            |dense| {
                (1..args.d)
                    .map(|k| {
                        numeric_rank(unfolding(&dense, k).unwrap().matrix(), Default::default())
                            .unwrap()
                    })
                    .collect::<Vec<_>>()
            },
        ),
    };
    match dense_result {
        Ok(ranks) => per_k = Some(ranks),
        Err(Error::TooLarge(_)) => guard_exceeded = true,
        Err(e) => return Err(e),
    }
    let exact_tt_rank = per_k.as_ref().map(|ranks| *ranks.iter().max().unwrap());

    // LCM reference count applies on the divisor lattice with f = identity
    // over a contiguous range starting at 1.
    let lcm_reference = if matches!(ctx.as_ref(), JoinSemilattice::Divisor)
        && matches!(f, Valuation::Identity)
        && args.d >= 3
        && subset
            .iter()
            .enumerate()
            .all(|(i, e)| e.canonical() == (i + 1).to_string())
    {
        Some(lcm_tt_rank_reference(n, args.d)?)
    } else {
        None
    };

    let spec = spec_echo(
        "rank",
        &args.lattice,
        Some(&args.set),
        Some(args.d),
        mode,
        args.seed,
        json!({ "guard": args.guard }),
    );
    let payload = json!({
        "n": n,
        "d": args.d,
        "lattice": args.lattice.lattice,
        "f": args.lattice.valuation,
        "lower": report.lower,
        "upper": report.upper,
        "assumption_holds": report.assumption.holds,
        "assumption_approximate": report.assumption.approximate,
        "equality_case": report.equality_case,
        "half_closure_size": report.half_closure_size,
        "full_closure_size": report.full_closure_size,
        "exact_rank_per_k": per_k.as_ref().map(|v| json!(v)).unwrap_or(Value::Null),
        "exact_tt_rank": exact_tt_rank.map(|v| json!(v)).unwrap_or(Value::Null),
        "rank_mode": mode.name(),
        "guard_exceeded": guard_exceeded,
        "lcm_reference_rank": lcm_reference.map(|v| json!(v)).unwrap_or(Value::Null),
    });
    write_json(
        args.out.as_deref(),
        &envelope("jointensor.rank.v1", spec, payload),
    )?;
    Ok(0)
}
