//! Command-line driver for zenolab experiments.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zenolab::harness::{run_experiment, ConfigError, ExperimentConfig, HarnessError, RunOptions};
use zenolab::operators::MODELS;

#[derive(Parser)]
#[command(name = "zenolab", version = zenolab::VERSION, about = "Quantum Zeno limit experiments")]
struct Cli {
    /// Worker threads for sweep points (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Tolerance profile: default or strict.
    #[arg(long, global = true, env = "ZENOLAB_TOLERANCE_PROFILE", default_value = "default")]
    tolerance_profile: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write its outputs.
    Run { config: PathBuf },
    /// Check a config and print it with defaults filled in.
    Validate { config: PathBuf },
    /// List the built-in models.
    ListModels,
    /// Print the library version.
    Version,
}

fn load(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
    Ok(ExperimentConfig::from_json(&text)?)
}

fn validate(path: &Path) -> Result<String, HarnessError> {
    let config = load(path)?.normalized()?;
    config.validate()?;
    Ok(config.to_json_pretty())
}

fn run(path: &Path, opts: &RunOptions) -> Result<String, HarnessError> {
    let config = load(path)?;
    let result = run_experiment(&config, opts)?;
    let mut summary =
        format!("{}: {} points -> {}", config.experiment, result.records.len(), config.output.path.display());
    match (result.fit, &result.fit_note) {
        (Some(fit), _) => summary.push_str(&format!(", slope {:.4} (residual {:.3})", fit.slope, fit.residual)),
        (None, Some(note)) => summary.push_str(&format!(", no fit: {note}")),
        (None, None) => {}
    }
    if let Some(lo) = &result.limit_order {
        summary.push_str(&format!(
            ", discrepancy {:e} (continuous {:e}, pulsed {:e})",
            lo.discrepancy, lo.continuous_distance, lo.pulsed_distance
        ));
    }
    Ok(summary)
}

fn list_models() -> String {
    MODELS
        .iter()
        .map(|m| {
            let dim = m.fixed_dim.map_or("any".to_string(), |d| d.to_string());
            format!("{:<18} dim {:<4} {}", m.name, dim, m.summary)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { workers: cli.workers, tolerance_profile: cli.tolerance_profile };
    let outcome = match &cli.command {
        Command::Run { config } => run(config, &opts),
        Command::Validate { config } => validate(config),
        Command::ListModels => Ok(list_models()),
        Command::Version => Ok(zenolab::VERSION.to_string()),
    };
    match outcome {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            match &cli.command {
                Command::Run { config } | Command::Validate { config } => {
                    eprintln!("error: {}: {err}", config.display())
                }
                _ => eprintln!("error: {err}"),
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
