//! `nlpoly`: construct and check nilpotent linearized polynomials, the
//! permutations built from them, their cycle types, and S-box involutions.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod run;

#[derive(Parser)]
#[command(name = "nlpoly", version, about = "Nilpotent linearized polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build an NLP from a family and print its certificate file.
    Construct(Opts),
    /// Report the nilpotency index of a polynomial.
    Verify(Opts),
    /// Build `L + k` and print its inverse, order and completeness.
    Perm(Opts),
    /// Print the cycle type of `L + k`.
    Cycles(Opts),
    /// Build and certify a fixed-point-free involution `L + x + a`.
    Involution(Opts),
    /// Write a permutation or involution as an S-box table.
    Export(Opts),
}

#[derive(Args, Clone, Default)]
pub struct Opts {
    /// Field spec `p^m:n[:g=<hex>][:f=<hex list>|@preset]`.
    #[arg(long)]
    pub field: Option<String>,
    /// NLP family, e.g. `basefield:r=1,t=2` or `sparse:m=8`.
    #[arg(long)]
    pub family: Option<String>,
    /// Nilpotency target for `verify`.
    #[arg(long)]
    pub t: Option<usize>,
    /// Coefficient of the absolute trace in `k = α·Tr + β·x`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Scalar for `k = γx`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Polynomial file supplying L (and the field).
    #[arg(long)]
    pub poly: Option<PathBuf>,
    /// Shift index for `involution`; defaults to the least valid one.
    #[arg(long)]
    pub shift: Option<u64>,
    /// `export`: the involution of the family instead of `L + k`.
    #[arg(long)]
    pub involution: bool,
    /// S-box format: raw, carray or json.
    #[arg(long)]
    pub export: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Enumeration budget in field elements.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled points for fields above the budget.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e);
            ExitCode::FAILURE
        }
    }
}
