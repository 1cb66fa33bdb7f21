//! `formorbits` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 unsupported or infinite case.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "formorbits", version, about = "Exact orbit analysis of alternating forms")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Ambient dimension (required wherever an expression is parsed).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Grade; only needed for the zero element.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Print one canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Catalog JSON file replacing the builtin catalog for its case.
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degeneracy, stability and orbit invariants of a form.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Orbit of a form in the catalog for its case.
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Dual form `ι_ξ Ω` of a multivector, `Ω = e^{1…n}`.
    Dual {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Map a form back to its multivector instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Action of an invertible matrix (columns are images of basis vectors).
    Act {
        /// Matrix as `a,b;c,d` or a JSON array of rows; may also be given
        /// as the first positional argument.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// Treat the expression as a multivector (left action).
        #[arg(long)]
        multivector: bool,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
    },
    /// Orbit count table for 2 <= n <= 9, computed from the catalogs.
    Table {
        /// Compare every cell with the reference counts.
        #[arg(long)]
        verify: bool,
    },
    /// Randomized consistency suites.
    Selfcheck {
        /// Random trials per case in the sampled suites.
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// A seeded random point of an orbit, by id.
    Sample { id: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
