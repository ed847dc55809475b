mod commands;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gvdual::DEFAULT_SEED;

/// Exact checks of duality structures on quadratic algebras, binary
/// quadratic operads and F-structures.
#[derive(Parser, Debug)]
#[command(name = "gvdual", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of sampled objects or test fields.
    #[arg(long, global = true, value_parser = positive)]
    pub samples: Option<usize>,
    /// Truncation order for power series.
    #[arg(long, global = true, value_parser = positive)]
    pub cap: Option<usize>,
    /// Highest degree for Hilbert series.
    #[arg(long, global = true, value_parser = positive)]
    pub maxdeg: Option<usize>,
    /// Input file, or a stock object such as `@lie` or `@semisimple2`. Repeatable.
    #[arg(short = 'f', long = "file", global = true)]
    pub files: Vec<String>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadratic algebras (text syntax or JSON).
    #[command(subcommand)]
    Qa(QaCmd),
    /// Binary quadratic operads (JSON, or @lie / @comm / @assoc).
    #[command(subcommand)]
    Op(OpCmd),
    /// F-structures (JSON, or @semisimple2 / @semisimple3 / @i2_3 / @control).
    #[command(subcommand)]
    Fm(FmCmd),
}

#[derive(Subcommand, Debug)]
pub enum QaCmd {
    /// Koszul dual of one algebra.
    Dual,
    /// Black product of two algebras.
    Black,
    /// White product of two algebras.
    White,
    /// Dimensions of the graded pieces up to --maxdeg.
    Hilbert,
    /// Duality axioms on the given algebras, or on seeded random ones.
    Gvcheck,
}

#[derive(Subcommand, Debug)]
pub enum OpCmd {
    /// Koszul dual of one operad.
    Dual,
    /// Black product of two operads.
    Black,
    /// White product of two operads.
    White,
    /// Duality axioms on the given operads, or on stock and seeded random ones.
    Gvcheck,
}

#[derive(Subcommand, Debug)]
pub enum FmCmd {
    /// Commutativity, associativity, unit and the F-identity.
    Check,
    /// Whether a vector field is an eventual identity.
    Eventual {
        /// Vector field: `@e`, an inline JSON list of series, or a file.
        #[arg(long)]
        eps: String,
        /// Second eventual identity for the group-closure check.
        #[arg(long)]
        eps2: Option<String>,
    },
    /// Dual F-structure for an eventual identity.
    Dual {
        #[arg(long)]
        eps: String,
    },
    /// The commutator identity for powers of an eventual identity.
    Ex38 {
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        pow_n: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        pow_m: i64,
    },
    /// Coisotropy of the spectral ideal.
    Coisotropy,
    /// Fiber algebra at a point and its semisimplicity.
    Fiber {
        /// Point as `0,1/2` or a JSON array.
        #[arg(long)]
        point: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(&cli);
    ExitCode::from(code)
}
