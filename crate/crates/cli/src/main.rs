//! Command-line driver for join-tensor decompositions.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 bad spec, 3 size guard
//! exceeded. Failures also emit machine-readable JSON on stderr.

mod commands;
mod output;
mod spec;

use clap::{Parser, Subcommand};

use jointensor_core::Error;

#[derive(Parser)]
#[command(
    name = "jointensor",
    version,
    about = "Explicit polyadic and tensor-train decompositions of join tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and serialize a CP and/or TT decomposition.
    Decompose(commands::decompose::DecomposeArgs),
    /// Nonzero-count comparison of sym/TT/CP over an (n, d) grid.
    StorageSweep(commands::storage_sweep::StorageSweepArgs),
    /// Dominant-eigenvalue brackets with the theoretical upper bound.
    EigSweep(commands::eig_sweep::EigSweepArgs),
    /// Rank bounds plus exact unfolding-rank verification.
    Rank(commands::rank::RankArgs),
    /// Cross-check CP/TT/symmetric storage against the dense oracle.
    Verify(commands::verify::VerifyArgs),
}

/// Run independent sweep cells, optionally on a bounded thread pool. Results
/// come back in cell order regardless of completion order.
pub fn run_cells<C: Sync, R: Send>(
    jobs: usize,
    cells: &[C],
    work: impl Fn(&C) -> R + Sync,
) -> Vec<R> {
    if jobs <= 1 {
        cells.iter().map(work).collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| cells.par_iter().map(&work).collect())
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::TooLarge(_) => 3,
        _ => 2,
    }
}

fn kind_of(err: &Error) -> &'static str {
    match err {
        Error::TooLarge(_) => "guard-exceeded",
        Error::NotASemilattice(_) => "not-a-semilattice",
        Error::NotAPartialOrder(_) => "not-a-partial-order",
        Error::UnknownElement(_) => "unknown-element",
        Error::MissingValuation(_) | Error::InvalidValuation(_) => "valuation",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
        _ => "invalid-spec",
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decompose(args) => commands::decompose::run(args),
        Command::StorageSweep(args) => commands::storage_sweep::run(args),
        Command::EigSweep(args) => commands::eig_sweep::run(args),
        Command::Rank(args) => commands::rank::run(args),
        Command::Verify(args) => commands::verify::run(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            let code = exit_code_for(&err);
            eprintln!(
                "{}",
                serde_json::json!({
                    "error": {
                        "kind": kind_of(&err),
                        "message": err.to_string(),
                        "exit": code,
                    }
                })
            );
            std::process::exit(code);
        }
    }
}
