//! Command-line driver: compute coefficient tables, verify them, and sweep
//! parameter grids, persisting JSON tables and CSV reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::PartialConfig;
use crate::error::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "boettcher",
    version,
    about = "Exact Böttcher coefficients a_k(r) and their congruences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for a_0..a_K on every (p, r) cell and write coeffs_p{p}_r{r}.json.
    Compute(GridArgs),
    /// Run checks and write report_p{p}_r{r}.csv; exit 1 if any check fails.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        /// Verify a saved coefficient file instead of solving.
        #[arg(long, conflicts_with_all = ["p", "r", "max_k"])]
        table: Option<PathBuf>,
    },
    /// Run every applicable check on a grid and write summary.csv and cells.csv.
    Sweep(GridArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Primes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    /// Values of r, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<u32>,
    /// Truncation order: `K` for every prime or `p:K`, comma separated.
    #[arg(long = "max-k", value_delimiter = ',')]
    pub max_k: Vec<String>,
    /// Check names, comma separated, or `all`.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn non_empty<T: Clone>(v: &[T]) -> Option<Vec<T>> {
    (!v.is_empty()).then(|| v.to_vec())
}

impl GridArgs {
    fn to_partial(&self) -> Result<PartialConfig, CliError> {
        let flags = PartialConfig {
            p: non_empty(&self.p),
            r: non_empty(&self.r),
            max_k: non_empty(&self.max_k),
            checks: non_empty(&self.checks),
            out: self.out.clone(),
            jobs: self.jobs,
        };
        match &self.config {
            Some(path) => Ok(flags.over(PartialConfig::from_file(path)?)),
            None => Ok(flags),
        }
    }
}

/// Executes a parsed command, printing progress to stdout, and returns the
/// process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute(grid) => {
            let config = grid.to_partial()?.validate(&[0])?;
            for path in commands::compute(&config)? {
                println!("wrote {}", path.display());
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { grid, table } => {
            let outcomes = match table {
                Some(path) => {
                    let loaded = io::load_table(&path)?;
                    let mut partial = grid.to_partial()?;
                    partial.p = Some(vec![loaded.params().p()]);
                    partial.r = Some(vec![loaded.params().r()]);
                    partial.max_k = None;
                    let config = partial.validate(&[0])?;
                    commands::verify(&config, Some(&loaded))?
                }
                None => {
                    let config = grid.to_partial()?.validate(&[0])?;
                    commands::verify(&config, None)?
                }
            };
            print!("{}", commands::render_outcomes(&outcomes));
            Ok(if outcomes.iter().all(commands::CellOutcome::passed) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
        Command::Sweep(grid) => {
            let config = grid.to_partial()?.validate(&[0, 1, 2, 3])?;
            let outcomes = commands::sweep(&config)?;
            print!("{}", commands::render_outcomes(&outcomes));
            Ok(if outcomes.iter().all(commands::CellOutcome::passed) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
    }
}
