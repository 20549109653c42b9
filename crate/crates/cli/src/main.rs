//! Command-line surface: exact permanents, estimator campaigns, the
//! verification suites, and exact moment tables.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 on usage, parse, or cap errors.

mod tables;
mod verify;

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use permlab::caps;
use permlab::estimators::{run_campaign, ryser_permanent, EstimatorKind, EstimatorSpec, InstanceMatrix};
use permlab::linalg::Measure;

#[derive(Parser)]
#[command(name = "permlab", version, about = "Permanent-estimator verification lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact permanent of a matrix file.
    Perm {
        /// Matrix file: first data line n, then n rows of n entries; `#`
        /// starts a comment.
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Run a seeded Monte Carlo estimator campaign and print its summary.
    Estimate {
        #[arg(long)]
        matrix: PathBuf,
        /// One of: trace, trace_sym, frobenius, frobenius_sym, gg_sign,
        /// unit_circle, scalar_gaussian.
        #[arg(long)]
        estimator: String,
        /// haar or gaussian (matrix-algebra estimators only).
        #[arg(long)]
        measure: Option<String>,
        /// Algebra dimension (matrix-algebra estimators only).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        /// json or csv.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run verification suites; exit 0 only if every check passes.
    Verify {
        /// all, exact, statistical, or one of: a-d, characters, a2,
        /// sandwich, cycle-cover, determinants, tensor, estimators,
        /// second-moment, frobenius.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Cap the degree of the exhaustive checks; larger cases are
        /// reported as skipped.
        #[arg(long)]
        cap_n: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        /// Deliberately corrupt one computation route to confirm the suite
        /// catches it (self-test; `cycle-count` is the only fault).
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Print exact moment tables (CSV) over an (n, d) grid.
    Tables {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        d_max: u64,
    },
}

#[derive(Serialize)]
struct EstimateRecord {
    estimator: String,
    measure: Option<String>,
    d: Option<usize>,
    n: usize,
    trials: u64,
    mean: f64,
    variance: f64,
    critical_ratio: f64,
    stderr_mean: f64,
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Perm { matrix } => {
            let a = load_matrix(&matrix)?;
            let perm = ryser_permanent(&a, caps::RYSER)?;
            println!("{perm}");
            Ok(0)
        }
        Command::Estimate {
            matrix,
            estimator,
            measure,
            d,
            trials,
            seed,
            format,
        } => {
            let a = load_matrix(&matrix)?;
            let kind = EstimatorKind::from_str(&estimator)?;
            let measure_parsed = measure
                .as_deref()
                .map(Measure::from_str)
                .transpose()?;
            let spec = EstimatorSpec {
                kind,
                measure: measure_parsed,
                d,
            };
            spec.validate()?;
            let stats = run_campaign(&a, &spec, trials, seed)?;
            let record = EstimateRecord {
                estimator: kind.to_string(),
                measure: spec.measure.map(|m| m.to_string()),
                d: spec.d,
                n: a.n(),
                trials: stats.trials,
                mean: stats.mean,
                variance: stats.variance,
                critical_ratio: stats.critical_ratio_estimate,
                stderr_mean: stats.stderr_mean,
                seed: stats.master_seed,
            };
            match format.as_str() {
                "json" => println!("{}", serde_json::to_string(&record)?),
                "csv" => {
                    println!(
                        "estimator,measure,d,n,trials,mean,variance,critical_ratio,stderr_mean,seed"
                    );
                    println!(
                        "{},{},{},{},{},{},{},{},{},{}",
                        record.estimator,
                        record.measure.as_deref().unwrap_or(""),
                        record.d.map(|d| d.to_string()).unwrap_or_default(),
                        record.n,
                        record.trials,
                        record.mean,
                        record.variance,
                        record.critical_ratio,
                        record.stderr_mean,
                        record.seed
                    );
                }
                other => return Err(anyhow!("unknown format `{other}` (use json or csv)")),
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            cap_n,
            trials,
            seed,
            inject_fault,
        } => {
            let fault = inject_fault
                .as_deref()
                .map(verify::Fault::from_str)
                .transpose()
                .map_err(|e| anyhow!(e))?;
            let config = verify::Config {
                suite: verify::Suite::from_str(&suite).map_err(|e| anyhow!(e))?,
                cap_n,
                trials,
                seed,
                fault,
            };
            let report = verify::run(&config);
            println!(
                "verify: {} passed, {} failed, {} skipped",
                report.passed, report.failed, report.skipped
            );
            Ok(if report.failed == 0 { 0 } else { 1 })
        }
        Command::Tables { n_max, d_max } => {
            print!("{}", tables::render(n_max, d_max));
            Ok(0)
        }
    }
}

fn load_matrix(path: &PathBuf) -> anyhow::Result<InstanceMatrix> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(InstanceMatrix::parse(&text)?)
}
