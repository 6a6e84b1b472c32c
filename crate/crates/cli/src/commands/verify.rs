//! `verify`: cross-check every representation against the dense oracle.
//!
//! Builds the dense tensor, a fresh CP and TT (or deserializes them from
//! files when given), and checks entrywise equality, the symmetric-part
//! round-trip, and contraction agreement on seeded random vectors. Prints a
//! pass/fail table; any mismatch exits nonzero with the first failing index
//! located.

use std::path::{Path, PathBuf};

use clap::Args;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use jointensor_core::decomp::{CpSerial, TtSerial};
use jointensor_core::{
    build_cp, build_tt, materialize_dense_guarded, symmetric_part, Contractor, DenseTensor,
    Error, Scalar, DEFAULT_DENSE_GUARD,
};

use crate::spec::{LatticeArgs, Mode, SetArgs};

const RANDOM_VECTORS: usize = 3;
const FLOAT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[command(flatten)]
    pub set: SetArgs,
    #[arg(short = 'd', long = "order")]
    pub d: usize,
    #[arg(long, default_value = "exact")]
    pub mode: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_DENSE_GUARD)]
    pub guard: u128,
    /// Verify a serialized polyadic decomposition instead of a fresh build.
    #[arg(long = "cp-file")]
    pub cp_file: Option<PathBuf>,
    /// Verify a serialized tensor-train instead of a fresh build.
    #[arg(long = "tt-file")]
    pub tt_file: Option<PathBuf>,
}

struct CheckLine {
    name: String,
    passed: bool,
    detail: String,
}

pub fn run(args: &VerifyArgs) -> Result<i32, Error> {
    let mode = Mode::parse(&args.mode)?;
    let lines = match mode {
        Mode::Exact => go::<BigRational>(args)?,
        Mode::Float => go::<f64>(args)?,
    };
    let mut failed = false;
    println!("check,result,detail");
    for line in &lines {
        println!(
            "{},{},{}",
            line.name,
            if line.passed { "pass" } else { "FAIL" },
            line.detail
        );
        failed |= !line.passed;
    }
    if failed {
        eprintln!(
            "{}",
            serde_json::json!({
                "error": {
                    "kind": "verification",
                    "message": "one or more verification checks failed",
                }
            })
        );
        Ok(1)
    } else {
        Ok(0)
    }
}

fn load_payload(path: &Path, key: &str) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        what: format!("{}", path.display()),
        detail: format!("{e}"),
    })?;
    Ok(value.get(key).cloned().unwrap_or(value))
}

fn close<T: Scalar>(a: &T, b: &T) -> bool {
    if T::mode() == jointensor_core::ArithMode::Exact {
        a == b
    } else {
        let (af, bf) = (a.to_f64(), b.to_f64());
        (af - bf).abs() <= FLOAT_REL_TOL * af.abs().max(bf.abs()).max(1.0)
    }
}

fn entrywise<T: Scalar>(
    name: &str,
    dense: &DenseTensor<T>,
    eval: impl Fn(&[usize]) -> Result<T, Error>,
) -> CheckLine {
    for flat in 0..dense.len() {
        let idx = dense.multi_index(flat);
        let got = match eval(&idx) {
            Ok(v) => v,
            Err(e) => {
                return CheckLine {
                    name: name.into(),
                    passed: false,
                    detail: format!("evaluation error at {idx:?}: {e}"),
                }
            }
        };
        if !close(&got, dense.flat(flat)) {
            return CheckLine {
                name: name.into(),
                passed: false,
                detail: format!(
                    "mismatch at index {idx:?}: {got} vs oracle {}",
                    dense.flat(flat)
                ),
            };
        }
    }
    CheckLine {
        name: name.into(),
        passed: true,
        detail: format!("{} entries", dense.len()),
    }
}

fn random_vector<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n)
        .map(|_| {
            if T::mode() == jointensor_core::ArithMode::Exact {
                let num: i64 = rng.random_range(-9..=9);
                let den: i64 = rng.random_range(1..=9);
                T::from_rational(&BigRational::new(num.into(), den.into()))
            } else {
                T::parse_text(&format!("{}", rng.random_range(0.0..1.0f64))).expect("finite")
            }
        })
        .collect()
}

fn go<T: Scalar>(args: &VerifyArgs) -> Result<Vec<CheckLine>, Error> {
    let ctx = args.lattice.build_context()?;
    let f = args.lattice.build_valuation()?;
    let subset = args.set.resolve(&ctx)?;
    let dense = materialize_dense_guarded::<T>(&subset, &f, args.d, args.guard)?;
    let mut lines = Vec::new();

    // CP: fresh build or file.
    let cp_built = build_cp::<T>(&subset, &f, args.d)?;
    match &args.cp_file {
        Some(path) => {
            let serial = CpSerial::<T>::from_json(&load_payload(path, "cp")?)?;
            lines.push(entrywise("cp-file vs dense", &dense, |idx| {
                serial.evaluate(idx)
            }));
        }
        None => {
            lines.push(entrywise("cp vs dense", &dense, |idx| cp_built.evaluate(idx)));
        }
    }

    // TT: fresh build or file.
    let tt_built = build_tt::<T>(&subset, &f, args.d)?;
    match &args.tt_file {
        Some(path) => {
            let serial = TtSerial::<T>::from_json(&load_payload(path, "tt")?)?;
            lines.push(entrywise("tt-file vs dense", &dense, |idx| {
                serial.evaluate(idx)
            }));
        }
        None => {
            lines.push(entrywise("tt vs dense", &dense, |idx| tt_built.entry(idx)));
        }
    }

    // Symmetric-part round-trip.
    lines.push(match symmetric_part(&dense) {
        Ok(sym) => {
            let mut line = CheckLine {
                name: "symmetric-part round-trip".into(),
                passed: true,
                detail: format!("{} stored entries", sym.entry_count()),
            };
            for flat in 0..dense.len() {
                let idx = dense.multi_index(flat);
                if sym.recover_entry(&idx).unwrap() != dense.flat(flat) {
                    line.passed = false;
                    line.detail = format!("mismatch at index {idx:?}");
                    break;
                }
            }
            line
        }
        Err(e) => CheckLine {
            name: "symmetric-part round-trip".into(),
            passed: false,
            detail: format!("{e}"),
        },
    });

    // Contraction backend agreement on seeded random vectors.
    let contractors = [
        Contractor::Dense(dense.clone()),
        Contractor::Cp(cp_built),
        Contractor::Tt(tt_built),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut agreement = CheckLine {
        name: "contraction backend agreement".into(),
        passed: true,
        detail: format!("{RANDOM_VECTORS} seeded vectors"),
    };
    'outer: for trial in 0..RANDOM_VECTORS {
        let x = random_vector::<T>(&mut rng, subset.len());
        let want = contractors[0].apply(&x)?;
        let want_q = contractors[0].quadratic_form(&x)?;
        for c in &contractors[1..] {
            let got = c.apply(&x)?;
            let got_q = c.quadratic_form(&x)?;
            let vec_ok = want.iter().zip(&got).all(|(a, b)| close(a, b));
            if !vec_ok || !close(&want_q, &got_q) {
                agreement.passed = false;
                agreement.detail = format!(
                    "backend {} disagrees with dense on trial {trial}",
                    c.backend_name()
                );
                break 'outer;
            }
        }
    }
    lines.push(agreement);

    Ok(lines)
}
