//! `circleqm`: verification suites, reference tables and state reports.
//!
//! Exit codes: 0 success, 1 failed check or numerical failure, 2 malformed
//! invocation or config.

mod commands;
mod config;
mod output;
mod verify;

use clap::{Parser, Subcommand};
use commands::TableName;
use output::{render, Format};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use verify::Suite;

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Config(String),
    /// Exit 1.
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(s) | CliError::Failed(s) => f.write_str(s),
        }
    }
}

/// Bad inputs are config errors; only a non-converging series is a failure.
pub fn lib_err(e: circleqm::Error) -> CliError {
    match e {
        circleqm::Error::NoConvergence(_) => CliError::Failed(e.to_string()),
        _ => CliError::Config(e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "circleqm", version, about = "Quantum mechanics on the circle: checks, tables and reports")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// `verify`: replaces every at-most threshold. Other commands: coefficient
    /// window truncation tolerance (default 1e-16).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for internal scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the invariant checks of one module or all of them.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Emit a reference table as rows.
    Table {
        #[arg(value_enum)]
        name: TableName,
        /// JSON config (`transition`, `kj`); `-` or absent reads stdin.
        config: Option<PathBuf>,
    },
    /// Moments of one coherent state.
    State { config: Option<PathBuf> },
    /// Overlap of two states of the same family.
    Overlap { config: Option<PathBuf> },
    /// Moments along a time grid.
    Evolve { config: Option<PathBuf> },
    /// Propagator in both theta forms.
    Kernel { config: Option<PathBuf> },
}

fn window_tol(tol: Option<f64>) -> Result<f64, CliError> {
    match tol {
        None => Ok(1e-16),
        Some(t) if t > 0.0 && t < 1.0 => Ok(t),
        Some(t) => Err(CliError::Config(format!("--tol must lie in (0, 1), got {t}"))),
    }
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Failed(format!("thread pool: {e}")))?;
    }
    let source = |p: &Option<PathBuf>| config::read_source(p.as_deref());
    let (report, ok) = match &cli.command {
        Command::Verify { suite } => {
            if let Some(t) = cli.tol {
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(CliError::Config(format!("--tol must be finite and non-negative, got {t}")));
                }
            }
            verify::run(*suite, cli.tol)
        }
        Command::Table { name, config } => (commands::table(*name, || source(config), window_tol(cli.tol)?)?, true),
        Command::State { config } => (commands::state(&source(config)?, window_tol(cli.tol)?)?, true),
        Command::Overlap { config } => (commands::overlap(&source(config)?, window_tol(cli.tol)?)?, true),
        Command::Evolve { config } => (commands::evolve(&source(config)?, window_tol(cli.tol)?)?, true),
        Command::Kernel { config } => (commands::kernel_report(&source(config)?)?, true),
    };
    Ok((render(&report, cli.format), ok))
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Failed(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Failed(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, ok)| emit(&cli, &text).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("circleqm: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("circleqm: {e}");
            ExitCode::from(match e {
                CliError::Config(_) => 2,
                CliError::Failed(_) => 1,
            })
        }
    }
}
