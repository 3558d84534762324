//! `lcycle`: generate instances, solve them, tile them and run sweeps.

mod experiment;
mod generate;
mod report;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcycle::extremal::SolverConfig;
use lcycle::SearchBudget;

/// Exit codes shared by all subcommands.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const EXHAUSTED: u8 = 3;
}

/// Error carrying the exit code it should produce.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: exit::INPUT,
            message: message.into(),
        }
    }
}

impl From<lcycle::Error> for Failure {
    fn from(e: lcycle::Error) -> Failure {
        let code = match e {
            lcycle::Error::Exhausted(_) => exit::EXHAUSTED,
            lcycle::Error::Pipeline { .. } => exit::CHECK_FAILED,
            _ => exit::INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(name = "lcycle", version, about = "Hamilton l-cycles in k-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated instance as JSON (or binary with --format binary).
    Generate(generate::GenerateArgs),
    /// Look for a Hamilton l-cycle and print a JSON report.
    Solve(solve::SolveArgs),
    /// Tile with copies of Y_{k,b} or certify near-extremality.
    Tile(solve::TileArgs),
    /// Run a parameter sweep with named checks; CSV or JSON rows.
    Experiment(experiment::ExperimentArgs),
}

/// Flags shared by the commands that search.
#[derive(Args, Debug, Clone, Default)]
pub struct SearchFlags {
    /// Node limit for exact searches.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit in seconds for exact searches.
    #[arg(long)]
    pub budget_secs: Option<f64>,
    /// Single-threaded, timings reported as 0: equal inputs give equal bytes.
    #[arg(long)]
    pub deterministic: bool,
    /// JSON file with solver thresholds (fields of the solver config).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl SearchFlags {
    pub fn budget(&self) -> CliResult<SearchBudget> {
        let mut b = match self.budget_nodes {
            Some(n) => SearchBudget::nodes(n),
            None => SearchBudget::unlimited(),
        };
        if let Some(s) = self.budget_secs {
            if !(s.is_finite() && s > 0.0) {
                return Err(Failure::input(format!("--budget-secs must be positive, got {s}")));
            }
            b = b.with_time_limit(s);
        }
        Ok(b.with_parallel(!self.deterministic))
    }

    pub fn solver_config(&self) -> CliResult<SolverConfig> {
        let config = match &self.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<SolverConfig>(&text)
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
            }
            None => SolverConfig::default(),
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Extremal pipeline only; a failing stage is reported, not retried.
    Pipeline,
    /// Exact search only.
    Exact,
    /// Pipeline, with exact search wherever it fails.
    #[default]
    Auto,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate::run(&a),
        Command::Solve(a) => solve::run_solve(&a),
        Command::Tile(a) => solve::run_tile(&a),
        Command::Experiment(a) => experiment::run(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
