//! `dop`: exact discrete orthogonal polynomials from the command line.

mod commands;
mod error;
mod family;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use discrete_orthopoly::staircase::OrderKind;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dop", version, about = "Exact discrete orthogonal polynomials on finite point sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Monomial order: grlex or grevlex.
    #[arg(long, global = true, default_value = "grevlex", value_parser = parse_order)]
    pub order: OrderKind,
    /// Variable precedence as a comma-separated permutation of 0..d.
    #[arg(long, global = true, value_delimiter = ',')]
    pub precedence: Option<Vec<usize>>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Checks run by `verify`.
    #[arg(long, global = true, value_delimiter = ',', value_enum)]
    pub checks: Option<Vec<Check>>,
    /// Also write a floating-point orthonormal basis.
    #[arg(long, global = true)]
    pub orthonormal: bool,
    #[arg(long, global = true, value_enum, default_value_t = Scale::Canonical)]
    pub scale: Scale,
    /// Cut-off for infinite supports.
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Staircase of a point set.
    Staircase { points: PathBuf },
    /// Orthogonal basis for a point set and weights.
    Construct { points: PathBuf, weights: PathBuf },
    /// Check a basis against its point set and weights.
    Verify { basis: PathBuf, points: PathBuf, weights: PathBuf },
    /// Three-term recurrence blocks of a basis.
    Recurrence { basis: PathBuf, points: PathBuf, weights: PathBuf },
    /// Polynomials and a weighted point set from recurrence blocks.
    Favard {
        recurrence: PathBuf,
        staircase: PathBuf,
        /// Candidate points for the recovered measure.
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        attempts: usize,
    },
    /// Closed-form family described by a JSON spec.
    Family { spec: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    #[value(name = "three-term")]
    ThreeTerm,
    Rank,
    Cd,
    Jacobi,
    Orthogonality,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Orthogonality, Check::ThreeTerm, Check::Rank, Check::Cd, Check::Jacobi];

    pub fn name(self) -> &'static str {
        match self {
            Check::ThreeTerm => "three-term",
            Check::Rank => "rank",
            Check::Cd => "cd",
            Check::Jacobi => "jacobi",
            Check::Orthogonality => "orthogonality",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Canonical,
    Raw,
}

fn parse_order(s: &str) -> Result<OrderKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dop: {e}");
            e.exit_code()
        }
    }
}
