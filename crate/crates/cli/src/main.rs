use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use qsys_cli::{commands, CliResult, Options, Outcome, Target, EXIT_FAIL, EXIT_USAGE};
use qsys_core::functoriality::SUITES;
use qsys_core::Tolerance;

/// Computations in finitely presented unitary 2-categories and their
/// Q-system completions.
#[derive(Parser, Debug)]
#[command(name = "qsys", version)]
struct Cli {
    /// Absolute tolerance for every check.
    #[arg(long, global = true, env = "QSYS_TOL", value_parser = parse_tol)]
    tol: Option<f64>,
    /// Leave wall-clock time out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a presentation.
    Validate { file: PathBuf },
    /// Check one named structure of a file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Complete a presentation on a list of Q-systems.
    Complete {
        file: PathBuf,
        /// Comma-separated names; `1_<object>` is the trivial Q-system.
        #[arg(long, value_delimiter = ',', required = true)]
        qsystems: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for Q-systems on an object.
    FindQsystems {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, default_value_t = 2.0)]
        dim_bound: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a bundled theorem suite, after validating FILE if given.
    VerifyTheorems {
        file: Option<PathBuf>,
        #[arg(long, value_parser = PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TargetArgs {
    #[arg(long)]
    qsystem: Option<String>,
    #[arg(long)]
    bimodule: Option<String>,
    #[arg(long)]
    functor: Option<String>,
    #[arg(long)]
    transformation: Option<String>,
    #[arg(long)]
    modification: Option<String>,
}

impl TargetArgs {
    fn target(self) -> Target {
        match self {
            Self {
                qsystem: Some(n), ..
            } => Target::QSystem(n),
            Self {
                bimodule: Some(n), ..
            } => Target::Bimodule(n),
            Self {
                functor: Some(n), ..
            } => Target::Functor(n),
            Self {
                transformation: Some(n),
                ..
            } => Target::Transformation(n),
            Self {
                modification: Some(n),
                ..
            } => Target::Modification(n),
            _ => unreachable!("clap requires exactly one target"),
        }
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    Tolerance::new(x, 0.0)
        .map(|t| t.abs)
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let opts = Options {
        tol: cli.tol.map_or_else(Tolerance::default, Tolerance::abs),
        timing: !cli.no_timing,
    };
    match cli.command {
        Command::Validate { file } => commands::cmd_validate(&file, &opts),
        Command::Check { file, target } => commands::cmd_check(&file, &target.target(), &opts),
        Command::Complete {
            file,
            qsystems,
            out,
            seed,
        } => commands::cmd_complete(&file, &qsystems, &out, seed, &opts),
        Command::FindQsystems {
            file,
            object,
            dim_bound,
            seed,
        } => commands::cmd_find_qsystems(&file, &object, dim_bound, seed, &opts),
        Command::VerifyTheorems { file, suite, seed } => {
            commands::cmd_verify_theorems(file.as_deref(), &suite, seed, &opts)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.json);
            eprintln!("{}", out.summary);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
