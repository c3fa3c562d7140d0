//! `uniton`: lattice queries, canonical-element enumeration, table checks,
//! construction of S^1-invariant extended solutions and model verification.
//!
//! Exit codes: 0 success, 1 a verification or table check failed, 2 usage or
//! parse error, 3 randomized construction exhausted its retries (or hit the
//! degree cap).

mod commands;
pub mod golden;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "uniton", version, about = "Canonical elements and extended solutions for SU(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice data of one element.
    Info {
        #[arg(long)]
        n: usize,
        /// Coefficients on H_1..H_{n-1}, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long)]
        json: bool,
    },
    /// Canonical (or symmetric canonical) elements up to symmetry.
    Canonical {
        #[arg(long)]
        n: usize,
        /// Restrict to this exact support (1-based indices).
        #[arg(long)]
        support: Option<String>,
        #[arg(long)]
        symmetric: bool,
        /// List every element instead of one representative per orbit.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare two elements in the dominance (or symmetric) order.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a canonical flag and its S^1-invariant model, then verify it.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree of random sections of constant bundles.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Write the model as JSON to this file.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Verify a model read from JSON.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Also check invariance under lambda -> -lambda.
        #[arg(long)]
        involution: bool,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Recompute the canonical-element tables and compare with the stored ones.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        json: bool,
    },
}

/// Runs one command line, writing normal output to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
