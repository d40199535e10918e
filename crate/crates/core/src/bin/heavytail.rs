use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use heavytail::app::{self, OutputFormat, Overrides, RunError, SEED_ENV};
use heavytail::Error;

/// Heavy-tail experiments: outlier diagnostics, put-tail-down mixtures,
/// limit models and tail bounds.
#[derive(Parser)]
#[command(name = "heavytail", version)]
struct Cli {
    /// JSON experiment config ({"command", "seed", "format", "params"}).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Input data (fit-pareto) or survival curve (tail-bound).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Column to read from --input when it has several.
    #[arg(long, global = true)]
    column: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a sample from a distribution.
    Simulate,
    /// Gaps between consecutive order statistics.
    Gaps,
    /// Fraction of points beyond k standard deviations.
    OutlierRate,
    /// Outlier rate of stable samples as n grows.
    Theorem1,
    /// Outlier probability of a put-tail-down mixture against its base.
    PutTailDown,
    /// Truncated LePage series and its tail index.
    Lepage,
    /// Annualized capital over a geometric horizon.
    Capital,
    /// Minimum over a geometric number of factors.
    RandomMin,
    /// Tail envelope from one survival value.
    TailBound,
    /// Pareto fit of positive data from CSV.
    FitPareto,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Gaps => "gaps",
            Command::OutlierRate => "outlier-rate",
            Command::Theorem1 => "theorem1",
            Command::PutTailDown => "put-tail-down",
            Command::Lepage => "lepage",
            Command::Capital => "capital",
            Command::RandomMin => "random-min",
            Command::TailBound => "tail-bound",
            Command::FitPareto => "fit-pareto",
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let overrides = Overrides {
        seed: cli.seed,
        env_seed: std::env::var(SEED_ENV).ok(),
        format: cli.format,
        input: cli.input,
        column: cli.column,
    };
    let text = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(source) => {
                return fail(RunError::Invalid(Error::Io {
                    path: path.clone(),
                    source,
                }))
            }
        },
        None => None,
    };
    let config = match app::resolve(cli.command.name(), text.as_deref(), &overrides) {
        Ok(config) => config,
        Err(e) => return fail(RunError::Invalid(e)),
    };
    match app::run(&config, &cli.out) {
        Ok(summary) => {
            println!("{}", summary.line);
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn fail(e: RunError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
