//! `storage-sweep`: nonzero counts of the three representations over an
//! (n, d) grid.

use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde_json::json;

use jointensor_core::{
    build_cp, build_tt, symmetric_storage, Error, JoinSemilattice, OrderedSubset, Valuation,
};

use crate::output::write_csv;
use crate::spec::{range_elements, spec_echo, LatticeArgs, Mode};

#[derive(Debug, Args)]
pub struct StorageSweepArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Inclusive dimension range `lo..hi`.
    #[arg(long = "n-range", default_value = "2..20")]
    pub n_range: String,
    /// Comma-separated list of orders.
    #[arg(long = "d-list", default_value = "4,6,8,10,12,14")]
    pub d_list: String,
    /// Skip CP cells with order d above this threshold (CP construction is
    /// the first to become infeasible as the order grows).
    #[arg(long = "skip-cp-above")]
    pub skip_cp_above: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub struct SweepRow {
    pub n: usize,
    pub d: usize,
    pub representation: &'static str,
    pub count: Option<u128>,
    pub status: String,
}

impl SweepRow {
    fn render(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.d,
            self.representation,
            self.count.map_or(String::new(), |c| c.to_string()),
            self.status
        )
    }
}

pub fn parse_range(text: &str) -> Result<(usize, usize), Error> {
    let err = || Error::Parse {
        what: "n-range".into(),
        detail: format!("expected `lo..hi`, got `{text}`"),
    };
    let (lo, hi) = text.split_once("..").ok_or_else(err)?;
    let lo: usize = lo.trim().parse().map_err(|_| err())?;
    let hi: usize = hi.trim().parse().map_err(|_| err())?;
    if lo == 0 || hi < lo {
        return Err(err());
    }
    Ok((lo, hi))
}

pub fn parse_d_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|_| Error::Parse {
                what: "d-list".into(),
                detail: format!("bad order `{tok}`"),
            })
        })
        .collect()
}

/// Counts for one (n, d) cell. Cell failures are folded into row statuses so
/// one bad cell never aborts a sweep.
fn sweep_cell(
    ctx: &Arc<JoinSemilattice>,
    f: &Valuation,
    n: usize,
    d: usize,
    skip_cp_above: Option<usize>,
) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(3);
    let subset = range_elements(ctx, n)
        .and_then(|elems| OrderedSubset::linear_extension(Arc::clone(ctx), elems));
    let subset = match subset {
        Ok(s) => s,
        Err(e) => {
            for representation in ["sym", "tt", "cp"] {
                rows.push(SweepRow {
                    n,
                    d,
                    representation,
                    count: None,
                    status: format!("error:{e}"),
                });
            }
            return rows;
        }
    };

    rows.push(match symmetric_storage(n, d) {
        Ok(r) => SweepRow {
            n,
            d,
            representation: "sym",
            count: Some(r.total),
            status: "ok".into(),
        },
        Err(e) => SweepRow {
            n,
            d,
            representation: "sym",
            count: None,
            status: format!("error:{e}"),
        },
    });

    rows.push(match build_tt::<f64>(&subset, f, d) {
        Ok(tt) => SweepRow {
            n,
            d,
            representation: "tt",
            count: Some(tt.storage_report().total),
            status: "ok".into(),
        },
        Err(e) => SweepRow {
            n,
            d,
            representation: "tt",
            count: None,
            status: format!("error:{e}"),
        },
    });

    let cp_skipped = skip_cp_above.is_some_and(|limit| d > limit);
    rows.push(if cp_skipped {
        SweepRow {
            n,
            d,
            representation: "cp",
            count: None,
            status: "skipped".into(),
        }
    } else {
        match build_cp::<f64>(&subset, f, d) {
            Ok(cp) => SweepRow {
                n,
                d,
                representation: "cp",
                count: Some(cp.storage_report().total),
                status: "ok".into(),
            },
            Err(e) => SweepRow {
                n,
                d,
                representation: "cp",
                count: None,
                status: format!("error:{e}"),
            },
        }
    });
    rows
}

pub fn run(args: &StorageSweepArgs) -> Result<i32, Error> {
    let ctx = args.lattice.build_context()?;
    let f = args.lattice.build_valuation()?;
    let (n_lo, n_hi) = parse_range(&args.n_range)?;
    let ds = parse_d_list(&args.d_list)?;

    let cells: Vec<(usize, usize)> = (n_lo..=n_hi)
        .flat_map(|n| ds.iter().map(move |&d| (n, d)))
        .collect();
    let rows: Vec<Vec<SweepRow>> = crate::run_cells(args.jobs, &cells, |&(n, d)| {
        sweep_cell(&ctx, &f, n, d, args.skip_cp_above)
    });

    let spec = spec_echo(
        "storage-sweep",
        &args.lattice,
        None,
        None,
        Mode::Float,
        args.seed,
        json!({
            "n_range": args.n_range,
            "d_list": args.d_list,
            "skip_cp_above": args.skip_cp_above,
        }),
    );
    let rendered: Vec<String> = rows.iter().flatten().map(SweepRow::render).collect();
    write_csv(
        args.out.as_deref(),
        "jointensor.storage-sweep.v1",
        &spec,
        "n,d,representation,count,status",
        &rendered,
    )?;
    Ok(0)
}
