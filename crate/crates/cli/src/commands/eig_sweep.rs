//! `eig-sweep`: dominant eigenvalue brackets against the Gerschgorin edge
//! over an (n, d) grid.

use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde_json::json;

use jointensor_core::{
    build_cp, build_tt, gerschgorin_bound, materialize_dense, power_method, Contractor, Error,
    JoinSemilattice, OrderedSubset, PowerConfig, Valuation,
};

use crate::output::{write_csv, write_text};
use crate::spec::{range_elements, spec_echo, LatticeArgs, Mode};

#[derive(Debug, Args)]
pub struct EigSweepArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Inclusive dimension range `lo..hi`.
    #[arg(long = "n-range", default_value = "1..10")]
    pub n_range: String,
    /// Comma-separated list of (even) orders.
    #[arg(long = "d-list", default_value = "4,6,8,10,12,14")]
    pub d_list: String,
    /// Contraction backend: `tt` (default), `cp`, or `dense`.
    #[arg(long, default_value = "tt")]
    pub backend: String,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long = "max-iterations", default_value_t = 10_000)]
    pub max_iterations: usize,
    /// Run odd orders outside the bracket theory.
    #[arg(long = "allow-odd", default_value_t = false)]
    pub allow_odd: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format: `csv` (default) or `json` (one report per cell).
    #[arg(long, default_value = "csv")]
    pub format: String,
    /// Directory for per-cell bracket histories (`history-n{n}-d{d}.csv`).
    #[arg(long = "history-dir")]
    pub history_dir: Option<PathBuf>,
}

struct EigRow {
    n: usize,
    d: usize,
    result: Result<(jointensor_core::EigenEstimate, f64), Error>,
}

fn eig_cell(
    ctx: &Arc<JoinSemilattice>,
    f: &Valuation,
    backend: &str,
    n: usize,
    d: usize,
    cfg: &PowerConfig,
) -> Result<(jointensor_core::EigenEstimate, f64), Error> {
    let subset = OrderedSubset::linear_extension(Arc::clone(ctx), range_elements(ctx, n)?)?;
    let contractor = match backend {
        "tt" => Contractor::Tt(build_tt::<f64>(&subset, f, d)?),
        "cp" => Contractor::Cp(build_cp::<f64>(&subset, f, d)?),
        "dense" => Contractor::Dense(materialize_dense::<f64>(&subset, f, d)?),
        other => {
            return Err(Error::Parse {
                what: "backend".into(),
                detail: format!("expected `tt`, `cp`, or `dense`, got `{other}`"),
            })
        }
    };
    let est = power_method(&contractor, cfg)?;
    let region = gerschgorin_bound::<f64>(&subset, f, d)?;
    Ok((est, region.real_upper))
}

pub fn run(args: &EigSweepArgs) -> Result<i32, Error> {
    let ctx = args.lattice.build_context()?;
    let f = args.lattice.build_valuation()?;
    let (n_lo, n_hi) = super::storage_sweep::parse_range(&args.n_range)?;
    let ds = super::storage_sweep::parse_d_list(&args.d_list)?;
    let cfg = PowerConfig {
        tolerance: args.tolerance,
        max_iterations: args.max_iterations,
        allow_odd: args.allow_odd,
        ..PowerConfig::default()
    };

    let cells: Vec<(usize, usize)> = (n_lo..=n_hi)
        .flat_map(|n| ds.iter().map(move |&d| (n, d)))
        .collect();
    let rows: Vec<EigRow> = crate::run_cells(args.jobs, &cells, |&(n, d)| EigRow {
        n,
        d,
        result: eig_cell(&ctx, &f, &args.backend, n, d, &cfg),
    });

    let spec = spec_echo(
        "eig-sweep",
        &args.lattice,
        None,
        None,
        Mode::Float,
        args.seed,
        json!({
            "n_range": args.n_range,
            "d_list": args.d_list,
            "backend": args.backend,
            "tolerance": args.tolerance,
            "max_iterations": args.max_iterations,
        }),
    );

    let mut rendered = Vec::with_capacity(rows.len());
    let mut reports = Vec::with_capacity(rows.len());
    for row in &rows {
        match &row.result {
            Ok((est, bound)) => {
                // A bracket above the theoretical edge indicates a bug, not
                // a loose bound; abort loudly as a verification failure.
                if est.lambda_upper > *bound {
                    eprintln!(
                        "{}",
                        json!({
                            "error": {
                                "kind": "verification",
                                "message": format!(
                                    "eigenvalue bracket exceeds the theoretical bound at \
                                     n={} d={}: {} > {bound}",
                                    row.n, row.d, est.lambda_upper
                                ),
                            }
                        })
                    );
                    return Ok(1);
                }
                rendered.push(format!(
                    "{},{},{},{},{},{},{},{}",
                    row.n,
                    row.d,
                    est.lambda_lower,
                    est.lambda_upper,
                    bound,
                    est.lambda / bound,
                    est.iterations,
                    est.converged
                ));
                reports.push(json!({
                    "n": row.n,
                    "d": row.d,
                    "lattice": args.lattice.lattice,
                    "f": args.lattice.valuation,
                    "lambda_lower": est.lambda_lower,
                    "lambda_upper": est.lambda_upper,
                    "iterations": est.iterations,
                    "converged": est.converged,
                    "bound_real_upper": bound,
                    "ratio": est.lambda / bound,
                }));
                if let Some(dir) = &args.history_dir {
                    let mut text = format!(
                        "# schema=jointensor.eig-history.v1 version={} spec={}\n",
                        crate::output::VERSION,
                        serde_json::to_string(&spec).expect("valid JSON")
                    );
                    text.push_str("iter,lower,upper\n");
                    for (k, (lo, hi)) in est.history.iter().enumerate() {
                        text.push_str(&format!("{},{lo},{hi}\n", k + 1));
                    }
                    write_text(
                        Some(&dir.join(format!("history-n{}-d{}.csv", row.n, row.d))),
                        &text,
                    )?;
                }
            }
            Err(e) => {
                rendered.push(format!("{},{},,,,,,error:{e}", row.n, row.d));
                reports.push(json!({
                    "n": row.n,
                    "d": row.d,
                    "error": e.to_string(),
                }));
            }
        }
    }

    match args.format.as_str() {
        "csv" => write_csv(
            args.out.as_deref(),
            "jointensor.eig-sweep.v1",
            &spec,
            "n,d,lambda_lower,lambda_upper,bound,ratio,iterations,converged",
            &rendered,
        )?,
        "json" => crate::output::write_json(
            args.out.as_deref(),
            &crate::output::envelope(
                "jointensor.eig-sweep.v1",
                spec,
                json!({ "cells": reports }),
            ),
        )?,
        other => {
            return Err(Error::Parse {
                what: "output format".into(),
                detail: format!("expected `csv` or `json`, got `{other}`"),
            })
        }
    }
    Ok(0)
}
