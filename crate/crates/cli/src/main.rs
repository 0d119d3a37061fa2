mod config;
mod error;
mod output;
mod run;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::run::DEFAULT_TOLERANCE;

#[derive(Parser)]
#[command(name = "zitterlab", version, about = "Run spinning-particle scenarios and write CSV trajectories and JSON reports")]
struct Cli {
    /// Print a template config (dirac, integrate, stability, zerospin, cronon, audit) and exit.
    #[arg(long, value_name = "KIND", num_args = 0..=1, default_missing_value = "dirac")]
    seed_format: Option<String>,

    /// Tolerance of the constraint audit.
    #[arg(long, global = true, value_name = "FLOAT")]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a scenario once per value of a parameter, in parallel.
    Sweep {
        config: PathBuf,
        /// Dotted path of the parameter, e.g. output.dtau or boost.0.
        #[arg(long)]
        param: String,
        /// Comma-separated values; `pi` is accepted, e.g. pi/2000.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tolerance = cli.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance > 0.0) {
        return fail(&CliError::Config {
            message: format!("tolerance must be positive, got {tolerance}"),
            field: Some("tolerance".into()),
        }, None);
    }
    if let Some(kind) = cli.seed_format {
        return match config::template(&kind) {
            Ok(t) => {
                println!("{}", serde_json::to_string_pretty(&t).expect("serializable"));
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e, None),
        };
    }
    match cli.command {
        Some(Command::Run { config, out }) => match run_one(&config, &out, tolerance) {
            Ok(code) => ExitCode::from(code),
            Err(e) => fail(&e, Some(&out)),
        },
        Some(Command::Sweep { config, param, values, out }) => {
            match sweep(&config, &param, &values, &out, tolerance) {
                Ok(code) => ExitCode::from(code),
                Err(e) => fail(&e, None),
            }
        }
        None => {
            eprintln!("nothing to do: use `zitterlab run`, `zitterlab sweep` or `--seed-format` (see --help)");
            ExitCode::from(error::EXIT_CONFIG)
        }
    }
}

/// Prints the error record to stderr and, when possible, into `out`.
fn fail(e: &CliError, out: Option<&Path>) -> ExitCode {
    let record = e.record();
    eprintln!("{record}");
    if let Some(dir) = out {
        if fs::create_dir_all(dir).is_ok() {
            let _ = output::write_json(&dir.join(output::ERROR_FILE), &record);
        }
    }
    ExitCode::from(e.exit_code())
}

fn read_config(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config {
        message: format!("cannot read {}: {e}", path.display()),
        field: None,
    })?;
    serde_json::from_str(&text).map_err(CliError::from_json)
}

fn run_one(path: &Path, out: &Path, tolerance: f64) -> Result<u8, CliError> {
    let value = read_config(path)?;
    let (code, _) = run_value(value, out, tolerance)?;
    Ok(code)
}

/// Runs a scenario and writes its outputs; returns the exit code and the
/// report.
fn run_value(value: Value, out: &Path, tolerance: f64) -> Result<(u8, Value), CliError> {
    let scenario = config::from_value(value)?;
    let outcome = run::execute(&scenario, tolerance)?;
    fs::create_dir_all(out)?;
    if let Some(rows) = &outcome.rows {
        output::write_csv(&out.join(output::CSV_FILE), rows)?;
    }
    output::write_json(&out.join(output::REPORT_FILE), &outcome.report)?;
    match outcome.failure {
        Some(e) => {
            let code = e.exit_code();
            fail(&e, Some(out));
            Ok((code, outcome.report))
        }
        None => Ok((0, outcome.report)),
    }
}

fn sweep(path: &Path, param: &str, values: &str, out: &Path, tolerance: f64) -> Result<u8, CliError> {
    let base = read_config(path)?;
    let values = config::parse_values(values)?;
    if values.is_empty() {
        return Ok(0);
    }
    // Reject a bad path once rather than once per run.
    config::set_path(&mut base.clone(), param, values[0])?;

    let results: Vec<Value> = values
        .par_iter()
        .enumerate()
        .map(|(i, &value)| {
            let dir = out.join(format!("run_{i:03}"));
            let mut cfg = base.clone();
            let result = config::set_path(&mut cfg, param, value)
                .and_then(|_| run_value(cfg, &dir, tolerance));
            let mut entry = json!({ "index": i, "value": value, "dir": dir.file_name().and_then(|d| d.to_str()) });
            match result {
                Ok((code, report)) => {
                    entry["exit_code"] = json!(code);
                    entry["p_drift"] = report["conservation"]["p_drift"].clone();
                    entry["J_drift"] = report["conservation"]["J_drift"].clone();
                    entry["H_drift"] = report["conservation"]["H_drift"].clone();
                    entry["times_ratio_mean"] = report["kinematics"]["times_ratio_mean"].clone();
                }
                Err(e) => {
                    fail(&e, Some(&dir));
                    entry["exit_code"] = json!(e.exit_code());
                    entry["error"] = e.record();
                }
            }
            entry
        })
        .collect();

    fs::create_dir_all(out)?;
    output::write_json(&out.join("summary.json"), &json!({ "param": param, "runs": results }))?;
    write_summary_csv(&out.join("summary.csv"), &results)?;
    Ok(results
        .iter()
        .map(|r| r["exit_code"].as_u64().unwrap_or(0) as u8)
        .max()
        .unwrap_or(0))
}

fn write_summary_csv(path: &Path, runs: &[Value]) -> Result<(), CliError> {
    let columns = ["index", "value", "exit_code", "p_drift", "J_drift", "H_drift", "times_ratio_mean"];
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(columns)?;
    for run in runs {
        let record: Vec<String> = columns
            .iter()
            .map(|c| match &run[*c] {
                Value::Null => String::new(),
                Value::Number(n) => n.to_string(),
                other => other.to_string(),
            })
            .collect();
        w.write_record(record)?;
    }
    w.flush()?;
    Ok(())
}
