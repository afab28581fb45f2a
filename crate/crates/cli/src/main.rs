use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weylchar::Error;

mod commands;

/// Exact characters of unitary groups and the checks built on them.
///
/// Every subcommand prints a single JSON document on stdout and a short
/// summary on stderr. Exit codes: 0 pass, 1 check failed, 2 usage or parse
/// error, 3 budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "weylchar", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// RNG seed; `WEYLCHAR_SEED` takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest rank for Gelfand–Tsetlin enumeration.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub gt_dim_max: u64,
    /// Largest number of series terms a subcommand may sum.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub series_truncation: u64,
    /// Largest Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub mc_samples: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character value and dimension of an irreducible representation.
    Char(commands::CharArgs),
    /// Tensor-product or block-restriction decomposition with the branching check.
    Branch(commands::BranchArgs),
    /// Second and fourth moments of the weight distribution, closed form against brute force.
    Moments(commands::MomentsArgs),
    /// Monte Carlo HCIZ integral against the exact value.
    Hciz(commands::HcizArgs),
    /// Ergodic approximation of a limit character on a Bratteli diagram.
    Ergodic(commands::ErgodicArgs),
    /// Schur–Weyl defect at `d = 2^n`.
    SchurWeyl(commands::SchurWeylArgs),
    /// Stirling identity, tail bound and semigroup checks.
    Poisson(commands::PoissonArgs),
    /// Structural checks of a Bratteli diagram.
    ValidateDiagram(commands::ValidateArgs),
}

/// Result of a subcommand: the JSON document, whether its checks passed, and
/// a one-line summary.
pub struct Outcome {
    pub json: serde_json::Value,
    pub passed: bool,
    pub summary: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::InvalidDiagram(_) | Error::IncompatibleK0(_) | Error::NonConvergent { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let mut cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(s) = std::env::var("WEYLCHAR_SEED") {
        match s.trim().parse() {
            Ok(seed) => cli.config.seed = seed,
            Err(_) => {
                eprintln!("error: WEYLCHAR_SEED must be an unsigned integer, got {s:?}");
                return ExitCode::from(2);
            }
        }
    }
    let outcome = match commands::run(&cli.command, &cli.config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize");
    let written = match &cli.config.output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    eprintln!("{} {}", if outcome.passed { "pass:" } else { "FAIL:" }, outcome.summary);
    ExitCode::from(if outcome.passed { 0 } else { 1 })
}
