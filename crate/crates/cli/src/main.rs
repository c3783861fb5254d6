//! `antinorm`: verification suites for fuzzy anti-normed spaces.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
//! input or usage.

mod commands;
mod report;
mod spec_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fuzzy_antinorm::sequences::default_t_grid;

use commands::{CliError, ConvergeArgs, Output, RieszArgs, RoundTripArgs};

#[derive(Parser)]
#[command(
    name = "antinorm",
    version,
    about = "Verification suites for fuzzy anti-normed spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Space specification file (TOML).
    spec: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write CSV side outputs into this directory.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sampled t-conorm and anti-norm axiom suites.
    CheckAxioms {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Table of α-norms of one vector.
    AlphaTable {
        #[command(flatten)]
        common: Common,
        /// Vector components, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.25,0.5,0.75,0.9")]
        alpha: Vec<f64>,
    },
    /// Reconstruction of the anti-norm from its α-norms, and back.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        x_samples: usize,
        #[arg(long, default_value_t = 100)]
        t_samples: usize,
        /// Sampled (x, α) pairs for the family round trip.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Convergence diagnostics for a named sequence.
    Converge {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sequence: String,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.5,0.9")]
        alpha: Vec<f64>,
        /// Defaults to 10^k for k = -3..3.
        #[arg(long, value_delimiter = ',')]
        t_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 100)]
        tail: usize,
        /// Largest lag p in the Cauchy checks.
        #[arg(long, default_value_t = 5)]
        lag: usize,
        /// Terms written to trace.csv.
        #[arg(long, default_value_t = 100)]
        trace_terms: usize,
    },
    /// Riesz witness for a named subspace.
    Riesz {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subspace: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let (out, common) = match &cli.command {
        Command::CheckAxioms { common, samples, seed } => (
            commands::check_axioms(&common.spec, *samples, *seed, common.csv.as_deref())?,
            common,
        ),
        Command::AlphaTable { common, x, alpha } => (
            commands::alpha_table(&common.spec, x, alpha, common.csv.as_deref())?,
            common,
        ),
        Command::Roundtrip {
            common,
            x_samples,
            t_samples,
            samples,
            seed,
        } => {
            let args = RoundTripArgs {
                x_samples: *x_samples,
                t_samples: *t_samples,
                family_samples: *samples,
                seed: *seed,
            };
            (commands::roundtrip(&common.spec, &args, common.csv.as_deref())?, common)
        }
        Command::Converge {
            common,
            sequence,
            alpha,
            t_grid,
            tail,
            lag,
            trace_terms,
        } => {
            let grid = t_grid.clone().unwrap_or_else(default_t_grid);
            let args = ConvergeArgs {
                sequence,
                alphas: alpha,
                t_grid: &grid,
                tail: *tail,
                lag: *lag,
                trace_terms: *trace_terms,
            };
            (commands::converge(&common.spec, &args, common.csv.as_deref())?, common)
        }
        Command::Riesz {
            common,
            subspace,
            alpha,
            eps,
            samples,
            seed,
        } => {
            let args = RieszArgs {
                subspace,
                alpha: *alpha,
                eps: *eps,
                samples: *samples,
                seed: *seed,
            };
            (commands::riesz(&common.spec, &args, common.csv.as_deref())?, common)
        }
    };
    Ok((out, common.out.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, path)) => {
            if let Some(path) = path {
                if let Err(e) = std::fs::write(&path, out.report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            print!("{}{}", out.preamble, out.report.summary());
            if out.report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
