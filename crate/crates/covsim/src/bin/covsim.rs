//! `covsim` — run a configured sweep or scenario and write deterministic CSV.
//!
//! Usage: `covsim <experiment> --config <path> [--seed <u64>] [--out <path>]
//! [--quad-tol <float>]` where experiment is one of fig3, fig4, fig5, fig6,
//! scenario. Exit codes: 0 success, 1 configuration error, 2 numerical
//! failure. Diagnostics go to standard error, never into the CSV.

use clap::error::ErrorKind;
use clap::Parser;
use covsim::experiment::config::{Experiment, ExperimentConfig};
use covsim::experiment::{run, HarnessError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "covsim",
    version,
    about = "UAV coverage-extension experiment runner"
)]
struct Cli {
    /// Experiment to run: fig3, fig4, fig5, fig6 or scenario.
    experiment: String,
    /// Flat key-value configuration file (may be empty; defaults apply).
    #[arg(long)]
    config: PathBuf,
    /// Override the configured RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the output CSV path (default: <experiment>.csv).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the quadrature absolute tolerance.
    #[arg(long = "quad-tol")]
    quad_tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("covsim: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), HarnessError> {
    let experiment = Experiment::parse(&cli.experiment).ok_or_else(|| HarnessError::Invalid {
        stage: "cli",
        message: format!(
            "unknown experiment {:?}; expected fig3, fig4, fig5, fig6 or scenario",
            cli.experiment
        ),
    })?;

    let text = std::fs::read_to_string(&cli.config).map_err(|e| HarnessError::Io {
        stage: "config",
        source: e,
    })?;
    let mut config = ExperimentConfig::parse(&text, experiment)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.output_path = out.display().to_string();
    }
    if let Some(tol) = cli.quad_tol {
        config.quad_tol = tol;
    }
    config.validate()?;

    let output = run(&config)?;
    let path = config.resolved_output_path();
    std::fs::write(&path, output.table.to_csv()).map_err(|e| HarnessError::Io {
        stage: "output",
        source: e,
    })?;

    println!("wrote {} ({} rows)", path, output.table.rows.len());
    if let Some(summary) = output.scenario {
        println!(
            "scenario summary: relays={} direct_coverage_ratio={:.6} coverage_extension_ratio={:.6}",
            summary.relay_count, summary.direct_coverage_ratio, summary.coverage_extension_ratio
        );
    }
    Ok(())
}
