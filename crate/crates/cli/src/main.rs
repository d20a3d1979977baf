//! Command-line front end for the orbit-counting library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyorbit::{EnumerationBudget, Error};

use crate::output::Report;

#[derive(Parser, Debug)]
#[command(
    name = "polyorbit",
    version,
    about = "Exact orbit counts for degree-bounded matrices over F_q[x]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Number of contiguous shards for parallel enumeration.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=4096))]
    shards: u64,
    /// Largest number of items a single enumeration may visit.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct FieldOpts {
    /// Field size, a prime power.
    #[arg(long)]
    q: u32,
    /// Defining polynomial of F_q over F_p when q is not prime, little-endian, e.g. `1,1,1`.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Single-orbit and total counts from the closed forms.
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        k: u32,
    },
    /// Closed forms against exhaustive enumeration, over the default grid or one point.
    Verify {
        /// Restrict the orbit and census checks to this dimension (with --q and --k).
        #[arg(long, requires_all = ["q", "k"])]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// Check the unipotent counts and recursions at these bounds (with --q).
        #[arg(long, value_delimiter = ',', requires = "q", conflicts_with_all = ["n", "k"])]
        bounds: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        #[arg(long, hide = true)]
        inject_mismatch: bool,
    },
    /// Exhaustive counts: the determinant-degree census, or one orbit given by --input.
    Brute {
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "input")]
        q: Option<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
        /// Matrix JSON file holding the orbit representative.
        #[arg(long, conflicts_with_all = ["n", "q", "modulus"])]
        input: Option<PathBuf>,
    },
    /// Hermite normal form and witness of a matrix read from a JSON file.
    Hnf {
        #[arg(long)]
        input: PathBuf,
    },
    /// Number of unipotent-at-zero matrices with the given column degree bounds.
    Lemma2 {
        #[arg(long, value_delimiter = ',', required = true)]
        bounds: Vec<u32>,
        #[command(flatten)]
        field: FieldOpts,
        /// Skip the exhaustive count.
        #[arg(long)]
        formula_only: bool,
    },
    /// Count preservation of the triangular-matrix moves.
    VerifyMoves {
        /// Matrix JSON file; without it, every nonsingular upper-triangular fixture is used.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2, conflicts_with = "input")]
        n: usize,
        #[arg(long, default_value_t = 2, conflicts_with = "input")]
        q: u32,
        /// Largest entry degree of the generated fixtures.
        #[arg(long, default_value_t = 1, conflicts_with = "input")]
        max_degree: u32,
        /// Check every k from t to this value; defaults to t + 2.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Integer matrices of fixed determinant under a norm bound.
    Zcase {
        #[command(subcommand)]
        command: ZcaseCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ZcaseCommand {
    /// Left and two-sided classes met by matrices of norm at most T.
    Classes {
        #[arg(long)]
        det: i64,
        #[arg(long = "T", default_value_t = 30)]
        t: u32,
    },
    /// Ratio of the two orbit counts of a prime-square determinant along a ladder of T.
    Ratio {
        #[arg(long)]
        det: i64,
        /// One bound, expanded to the ladder T/4, T/2, T, or an explicit comma list.
        #[arg(long = "T", value_delimiter = ',', default_value = "200")]
        t: Vec<u32>,
    },
    /// Leading constant of the count of matrices of determinant k.
    Constant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        /// Values of zeta(j) for j >= 3, e.g. `3=1.2020569031595942`.
        #[arg(long, value_delimiter = ',')]
        zeta: Vec<String>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvariantViolation(_) => 1,
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = EnumerationBudget::default()
        .with_max_items(cli.global.budget)
        .with_partitions(cli.global.shards as usize);
    let report: Report = match commands::run(cli.command, &budget) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = output::emit(&report, cli.global.format, cli.global.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification mismatch");
        ExitCode::from(1)
    }
}
