//! Command-line front end: sweep grids to CSV, tail-heaviness tables, and
//! single-game traces.
//!
//! Exit codes: 0 on success, 2 for configuration/usage problems, 3 for
//! domain errors (parameters outside their mathematical domain).

mod config;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ConfigError;
use vise_core::voting::{run_game_with, StepRecord};
use vise_core::{run_sweep, DistributionSpec, Error as CoreError};

#[derive(Parser)]
#[command(
    name = "vise",
    version,
    about = "Monte Carlo simulator for societies voting on stochastic proposals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep grid from a config file and write one CSV row per cell.
    Sweep {
        /// Path to the key = value config file.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "VISE_WORKERS", default_value_t = 0)]
        workers: usize,
    },
    /// Tabulate log10 tail heaviness over a z grid, one column per family.
    Tails {
        /// z grid: comma list or start:step:stop.
        #[arg(long, default_value = "0:0.01:30", allow_hyphen_values = true)]
        zgrid: String,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Families to tabulate (normal, sp:<k>, t3, laplace).
        #[arg(default_values_t = [
            "normal".to_string(), "sp:2.01".to_string(), "sp:2.1".to_string(),
            "sp:3".to_string(), "sp:20".to_string(), "t3".to_string(), "laplace".to_string(),
        ])]
        families: Vec<String>,
    },
    /// Trace one game step by step (requires a single-cell config).
    Game {
        /// Path to the key = value config file.
        #[arg(long)]
        config: PathBuf,
        /// Game seed; defaults to the config's base_seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output trace CSV path.
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Config(String),
    Domain(CoreError),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        // Unusable grids are configuration mistakes; everything else is a
        // mathematical domain violation.
        fn is_config(e: &CoreError) -> bool {
            match e {
                CoreError::InvalidConfig(_) => true,
                CoreError::SweepCell { source, .. } => is_config(source),
                _ => false,
            }
        }
        if is_config(&e) {
            CliError::Config(e.to_string())
        } else {
            CliError::Domain(e)
        }
    }
}

fn read_config(path: &PathBuf) -> Result<vise_core::ExperimentConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(config::parse(&text)?)
}

fn write_output(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn cmd_sweep(config: PathBuf, out: PathBuf, workers: usize) -> Result<(), CliError> {
    let experiment = read_config(&config)?;
    let rows = run_sweep(&experiment, workers)?;
    write_output(&out, &report::sweep_csv(&rows))?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn cmd_tails(zgrid: String, families: Vec<String>, out: PathBuf) -> Result<(), CliError> {
    let z_grid = config::parse_grid(&zgrid, 0)
        .map_err(|e| CliError::Config(format!("--zgrid: {}", e.0)))?;
    if let Some(&bad) = z_grid.iter().find(|&&z| z < 0.0) {
        return Err(CliError::Domain(CoreError::InvalidParameter(format!(
            "z grid must be nonnegative, got {bad}"
        ))));
    }
    let mut columns = Vec::new();
    for token in &families {
        let family = config::parse_family(token, None, 0)?;
        // Any std-dev works: the tail curve is scale-free.
        let spec = DistributionSpec::new(family, 0.0, 1.0)?;
        let log10_w: Vec<f64> = z_grid
            .iter()
            .map(|&z| spec.log_tail_heaviness(z).map(|lw| lw / std::f64::consts::LN_10))
            .collect::<Result<_, _>>()?;
        columns.push((report::tail_column_name(&family), log10_w));
    }
    write_output(&out, &report::tails_csv(&z_grid, &columns))?;
    eprintln!("wrote {} rows to {}", z_grid.len(), out.display());
    Ok(())
}

fn cmd_game(config: PathBuf, seed: Option<u64>, out: PathBuf) -> Result<(), CliError> {
    let experiment = read_config(&config)?;
    if experiment.families.len() != 1
        || experiment.mean_grid.len() != 1
        || experiment.strategies.len() != 1
    {
        return Err(CliError::Config(format!(
            "game needs a single-cell config (one family, one mu, one strategy); \
             got {} x {} x {}",
            experiment.families.len(),
            experiment.mean_grid.len(),
            experiment.strategies.len()
        )));
    }
    let dist = DistributionSpec::new(
        experiment.families[0],
        experiment.mean_grid[0],
        experiment.std_dev,
    )?;
    let seed = seed.unwrap_or(experiment.base_seed);
    let mut records: Vec<StepRecord> = Vec::new();
    run_game_with(
        &dist,
        experiment.strategies[0],
        &experiment.mode,
        experiment.agents,
        seed,
        |record, _| records.push(*record),
    )?;
    write_output(&out, &report::trace_csv(&records))?;
    eprintln!("wrote {} steps to {}", records.len(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep { config, out, workers } => cmd_sweep(config, out, workers),
        Command::Tails { zgrid, out, families } => cmd_tails(zgrid, families, out),
        Command::Game { config, seed, out } => cmd_game(config, seed, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("domain error: {e}");
            ExitCode::from(3)
        }
    }
}
