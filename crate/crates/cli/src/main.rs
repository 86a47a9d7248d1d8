use clap::{Parser, Subcommand};
use qdevsim_cli::config::{self, ConfigError};
use qdevsim_cli::{identities, run};
use std::path::PathBuf;
use std::process::ExitCode;

/// Device-level simulator and verification suite for elementary quantum
/// gates on atoms, cavities, trapped ions and quantum dots.
#[derive(Parser)]
#[command(name = "qdevsim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in gate-identity suite and print a pass/fail table.
    VerifyGates {
        /// Distance tolerance for each identity.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Simulate one schedule and write a fidelity report (JSON).
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a parameter sweep and write one CSV row per value.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyGates { tol } => {
            let results = identities::run_identity_suite();
            identities::print_table(&results, tol);
            ExitCode::from(identities::exit_code(&results, tol))
        }
        Command::Simulate { config, out } => dispatch(simulate_cmd(&config, &out)),
        Command::Sweep { config, out } => dispatch(sweep_cmd(&config, &out)),
    }
}

fn dispatch(result: Result<(), CliError>) -> ExitCode {
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}

enum CliError {
    Io(std::io::Error),
    Config(ConfigError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(ConfigError::Config(_)) => 2,
            CliError::Config(ConfigError::Precondition(_)) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Config(e) => write!(f, "{e}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn simulate_cmd(config_path: &PathBuf, out_path: &PathBuf) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config_path)?;
    let parsed = config::parse(&text)?;
    let prepared = config::prepare(&parsed)?;
    let report = run::simulate(&prepared)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    std::fs::write(out_path, json)?;
    Ok(())
}

fn sweep_cmd(config_path: &PathBuf, out_path: &PathBuf) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config_path)?;
    let parsed = config::parse(&text)?;
    let spec = parsed
        .sweep
        .clone()
        .ok_or_else(|| ConfigError::Config("sweep block missing from config".into()))?;
    let rows = run::sweep(&parsed, &spec)?;
    std::fs::write(out_path, run::sweep_csv(&rows))?;
    Ok(())
}
