//! Command-line surface over the JSON interchange formats: build algebras,
//! run invariant reports, compute cohomology tables, exercise extensions and
//! deformations, and run the full verification battery.
//!
//! Every invocation prints a single JSON document on standard output.
//! Exit codes: 0 success, 1 a mathematically meaningful property failed
//! (a broken identity, nonzero cohomology where a theorem demands zero),
//! 2 malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use filicoh::algebra::NLieAlgebra;
use filicoh::cohomology::{cohomology_dims, trivialize_semisimple, Action};
use filicoh::deformation::{deform, fi_residual_orders, trivialize_deformation};
use filicoh::extension::{central_extend, trivialize_extension};
use filicoh::json;
use filicoh::killing::{kasymov_nondegenerate, wedge_gram_matrix};
use filicoh::suite;
use filicoh::Error;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "filicoh",
    about = "Exact computations with Filippov (n-Lie) algebras: brackets, trace \
             forms, cohomology, central extensions and deformations",
    version
)]
struct Cli {
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for randomized property runs (falls back to FILICOH_SEED, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct algebras.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Verify identities of an algebra.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Trace-form reports: the semisimplicity test or the wedge Gram matrix.
    Killing {
        #[arg(long, value_enum)]
        mode: KillingMode,
        file: PathBuf,
    },
    /// Cocycle, coboundary and cohomology dimensions by exact rank.
    Cohomology {
        #[arg(long, value_enum)]
        action: ActionArg,
        #[arg(long)]
        degree: usize,
        file: PathBuf,
    },
    /// Central extension by a trivial-action 1-cochain.
    Extend {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Also construct a zero-cochain removing the central generator.
        #[arg(long)]
        trivialize: bool,
    },
    /// Deformation by an adjoint 1-cochain, with residuals by order.
    Deform {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Also construct a zero-cochain undoing the deformation.
        #[arg(long)]
        trivialize: bool,
    },
    /// Run the full verification battery; exits 0 only if every check passes.
    WhiteheadSuite {
        /// Largest arity exercised in the simple-family checks (3..=5).
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// The (n+1)-dimensional simple algebra for a signature like "+++-".
    Simple {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        signature: String,
    },
    /// Block-diagonal direct sum of the algebras in the given files.
    Sum { files: Vec<PathBuf> },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// The Filippov identity on all canonical basis tuples.
    Fi { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum KillingMode {
    Kasymov,
    Gram,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    Trivial,
    Adjoint,
}

impl From<ActionArg> for Action {
    fn from(a: ActionArg) -> Action {
        match a {
            ActionArg::Trivial => Action::Trivial,
            ActionArg::Adjoint => Action::Adjoint,
        }
    }
}

/// 0 = success, 1 = property violated, 2 = input error.
struct CommandResult {
    exit: u8,
    payload: Value,
}

fn input_error(e: impl std::fmt::Display) -> CommandResult {
    CommandResult {
        exit: 2,
        payload: json!({ "error": e.to_string() }),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        // violations of mathematical properties, not of the input format
        Error::NotACocycle | Error::TrivializerSelfCheck | Error::SymmetryClassViolation(_) => 1,
        _ => 2,
    }
}

fn load_algebra(path: &PathBuf) -> Result<NLieAlgebra, CommandResult> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    json::algebra_from_value(&value).map_err(input_error)
}

fn load_cochain(
    algebra: &NLieAlgebra,
    path: &PathBuf,
) -> Result<filicoh::cohomology::Cochain, CommandResult> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    json::cochain_from_value(algebra, &value).map_err(input_error)
}

fn rational_vec_json(v: &[filicoh::Rational]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| {
                let (num, den) = x.as_i64_pair().unwrap_or((0, 1));
                json!({"num": num, "den": den})
            })
            .collect(),
    )
}

fn fi_report_json(report: &filicoh::algebra::FIReport) -> Value {
    match &report.worst_case {
        None => json!({"passed": report.passed}),
        Some(v) => json!({
            "passed": report.passed,
            "worst_case": {
                "x_tuple": v.x_tuple,
                "y_tuple": v.y_tuple,
                "residual": rational_vec_json(&v.residual),
            },
        }),
    }
}

fn run(cli: &Cli, seed: u64) -> CommandResult {
    match &cli.cmd {
        Cmd::Algebra { cmd } => match cmd {
            AlgebraCmd::Simple { n, signature } => {
                let signs: Result<Vec<i64>, _> = signature
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        other => Err(format!("invalid signature character '{other}'")),
                    })
                    .collect();
                let signs = match signs {
                    Ok(s) => s,
                    Err(e) => return input_error(e),
                };
                match NLieAlgebra::simple(*n, &signs)
                    .and_then(|alg| json::algebra_to_value(&alg))
                {
                    Ok(payload) => CommandResult { exit: 0, payload },
                    Err(e) => input_error(e),
                }
            }
            AlgebraCmd::Sum { files } => {
                if files.is_empty() {
                    return input_error("algebra sum needs at least one file");
                }
                let mut parts = Vec::new();
                for f in files {
                    match load_algebra(f) {
                        Ok(a) => parts.push(a),
                        Err(r) => return r,
                    }
                }
                match NLieAlgebra::direct_sum(&parts).and_then(|alg| json::algebra_to_value(&alg))
                {
                    Ok(payload) => CommandResult { exit: 0, payload },
                    Err(e) => input_error(e),
                }
            }
        },
        Cmd::Check { cmd: CheckCmd::Fi { file } } => {
            let alg = match load_algebra(file) {
                Ok(a) => a,
                Err(r) => return r,
            };
            let report = alg.check_fi();
            CommandResult {
                exit: u8::from(!report.passed),
                payload: fi_report_json(&report),
            }
        }
        Cmd::Killing { mode, file } => {
            let alg = match load_algebra(file) {
                Ok(a) => a,
                Err(r) => return r,
            };
            match mode {
                KillingMode::Kasymov => {
                    let (nondegenerate, witness) = kasymov_nondegenerate(&alg);
                    let payload = match witness {
                        Some(w) => json!({
                            "nondegenerate": nondegenerate,
                            "witness": rational_vec_json(&w),
                        }),
                        None => json!({"nondegenerate": nondegenerate}),
                    };
                    CommandResult { exit: 0, payload }
                }
                KillingMode::Gram => match json::gram_to_value(&wedge_gram_matrix(&alg)) {
                    Ok(payload) => CommandResult { exit: 0, payload },
                    Err(e) => input_error(e),
                },
            }
        }
        Cmd::Cohomology {
            action,
            degree,
            file,
        } => {
            let alg = match load_algebra(file) {
                Ok(a) => a,
                Err(r) => return r,
            };
            match cohomology_dims(&alg, Action::from(*action), *degree) {
                Ok((z, b, h)) => CommandResult {
                    exit: 0,
                    payload: json!({"dimZ": z, "dimB": b, "dimH": h}),
                },
                Err(e) => input_error(e),
            }
        }
        Cmd::Extend {
            file,
            cocycle,
            trivialize,
        } => {
            let alg = match load_algebra(file) {
                Ok(a) => a,
                Err(r) => return r,
            };
            let c = match load_cochain(&alg, cocycle) {
                Ok(c) => c,
                Err(r) => return r,
            };
            let ext = match central_extend(&alg, &c) {
                Ok(e) => e,
                Err(e) => return input_error(e),
            };
            let mut payload = serde_json::Map::new();
            match json::algebra_to_value(&ext.extended) {
                Ok(v) => payload.insert("extended".into(), v),
                Err(e) => return input_error(e),
            };
            payload.insert("fi".into(), fi_report_json(&ext.fi));
            let mut exit = u8::from(!ext.fi.passed);
            if *trivialize && ext.fi.passed {
                match trivialize_semisimple(&alg, &c) {
                    Ok(beta) => {
                        let report = match trivialize_extension(&ext, &beta) {
                            Ok(r) => r,
                            Err(e) => return input_error(e),
                        };
                        let beta_json = match json::cochain_to_value(&alg, &beta) {
                            Ok(v) => v,
                            Err(e) => return input_error(e),
                        };
                        payload.insert(
                            "trivialization".into(),
                            json!({"success": report.success, "beta": beta_json}),
                        );
                        if !report.success {
                            exit = 1;
                        }
                    }
                    Err(e) => {
                        payload.insert(
                            "trivialization".into(),
                            json!({"success": false, "error": e.to_string()}),
                        );
                        exit = exit.max(exit_for(&e));
                    }
                }
            }
            CommandResult {
                exit,
                payload: Value::Object(payload),
            }
        }
        Cmd::Deform {
            file,
            cocycle,
            order,
            trivialize,
        } => {
            let alg = match load_algebra(file) {
                Ok(a) => a,
                Err(r) => return r,
            };
            let c = match load_cochain(&alg, cocycle) {
                Ok(c) => c,
                Err(r) => return r,
            };
            let def = match deform(&alg, &c, *order, None) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            let residuals = fi_residual_orders(&def);
            let mut payload = serde_json::Map::new();
            match json::deformation_to_value(&def) {
                Ok(v) => payload.insert("deformation".into(), v),
                Err(e) => return input_error(e),
            };
            payload.insert(
                "residuals".into(),
                Value::Array(
                    residuals
                        .iter()
                        .map(|r| match &r.witness {
                            None => json!({"order": r.order, "zero": r.zero}),
                            Some((x, y, res)) => json!({
                                "order": r.order,
                                "zero": r.zero,
                                "witness": {
                                    "x_tuple": x,
                                    "y_tuple": y,
                                    "residual": rational_vec_json(res),
                                },
                            }),
                        })
                        .collect(),
                ),
            );
            let flat_to_first_order = residuals.iter().take(2).all(|r| r.zero);
            let mut exit = u8::from(!flat_to_first_order);
            if *trivialize && flat_to_first_order {
                // triviality is a question about the order-one part
                let def1 = match deform(&alg, &c, 1, None) {
                    Ok(d) => d,
                    Err(e) => return input_error(e),
                };
                match trivialize_semisimple(&alg, &c) {
                    Ok(beta) => {
                        let report = match trivialize_deformation(&def1, &beta) {
                            Ok(r) => r,
                            Err(e) => return input_error(e),
                        };
                        let beta_json = match json::cochain_to_value(&alg, &beta) {
                            Ok(v) => v,
                            Err(e) => return input_error(e),
                        };
                        payload.insert(
                            "trivialization".into(),
                            json!({"success": report.success, "beta": beta_json}),
                        );
                        if !report.success {
                            exit = 1;
                        }
                    }
                    Err(e) => {
                        payload.insert(
                            "trivialization".into(),
                            json!({"success": false, "error": e.to_string()}),
                        );
                        exit = exit.max(exit_for(&e));
                    }
                }
            }
            CommandResult {
                exit,
                payload: Value::Object(payload),
            }
        }
        Cmd::WhiteheadSuite { max_n } => {
            if !(3..=5).contains(max_n) {
                return input_error("--max-n must lie in 3..=5");
            }
            let results = suite::run_all(seed, *max_n);
            let all_passed = results.iter().all(|r| r.passed);
            let payload = json!({
                "seed": seed,
                "max_n": max_n,
                "all_passed": all_passed,
                "criteria": results
                    .iter()
                    .map(|r| json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                    }))
                    .collect::<Vec<_>>(),
            });
            CommandResult {
                exit: u8::from(!all_passed),
                payload,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| {
            std::env::var("FILICOH_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    let result = run(&cli, seed);
    let rendered = if cli.pretty {
        json::to_pretty_string(&result.payload)
    } else {
        json::to_canonical_string(&result.payload)
    };
    println!("{rendered}");
    ExitCode::from(result.exit)
}
