//! `semik`: command-line front end for the semiring K-theory workbench.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "semik", version, about = "Exact semiring K-theory at desk scale")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Worker threads for the parallel searches (0 = one per core).
    #[arg(long, env = "SEMIK_THREADS", global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite Boolean semimodules.
    #[command(subcommand)]
    Bmod(BmodCmd),
    /// Tropical spans.
    #[command(subcommand)]
    Trop(TropCmd),
    /// Bratteli diagrams and their ordered SK0 groups.
    #[command(subcommand)]
    Bratteli(BratteliCmd),
    /// Classes in direct limits of simplicial ordered groups.
    #[command(subcommand)]
    Limit(LimitCmd),
    /// Finite semirings given by Cayley tables.
    #[command(subcommand)]
    Semiring(SemiringCmd),
    /// Matrices over a semiring kernel.
    #[command(subcommand)]
    Matrix(MatrixCmd),
}

#[derive(Subcommand, Debug)]
enum BmodCmd {
    /// Projectivity, freeness, cardinality and atoms of a module file.
    Analyze {
        /// Module JSON: {"coords": [...]} or {"n", "join", "bottom"}.
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum TropCmd {
    /// Extremal generators, weak dimension and freeness of a span file.
    Span {
        /// Span JSON: {"ambient", "generators"}.
        file: PathBuf,
        /// Probe grid {0, -1, ..., -k, -inf} for collapse witnesses.
        #[arg(long, default_value_t = semik::trop::DEFAULT_PROBE_DEPTH)]
        probe_depth: u32,
        /// Report UNKNOWN instead of constructing a witness off the grid.
        #[arg(long)]
        no_fallback: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BratteliCmd {
    /// Stage groups and connecting maps of a diagram file.
    Sk0 {
        /// Diagram JSON: {"field", "levels", "steps", "period"}.
        file: PathBuf,
    },
    /// Isomorphism of two diagrams' limits.
    Iso {
        /// First diagram JSON.
        left: PathBuf,
        /// Second diagram JSON.
        right: PathBuf,
        /// Bound on the start stages and period counts searched.
        #[arg(long, default_value_t = semik::bratteli::DEFAULT_ISO_DEPTH)]
        depth: usize,
        /// Cap on intertwining entries (default: square of the largest level entry).
        #[arg(long)]
        entry_bound: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct DepthArg {
    /// Stages explored beyond the starting stage.
    #[arg(long, default_value_t = semik::kflow::DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Subcommand, Debug)]
enum LimitCmd {
    /// Equality of two classes, each written STAGE:v1,v2,...
    Eq {
        /// System JSON: {"units", "maps", "period"}.
        file: PathBuf,
        /// First class, e.g. 0:1,-2.
        #[arg(allow_hyphen_values = true)]
        left: String,
        /// Second class.
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        depth: DepthArg,
    },
    /// Positivity of a class written STAGE:v1,v2,...
    Pos {
        /// System JSON: {"units", "maps", "period"}.
        file: PathBuf,
        /// The class, e.g. 1:3,-1.
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[command(flatten)]
        depth: DepthArg,
    },
}

#[derive(Subcommand, Debug)]
enum SemiringCmd {
    /// Flags, congruence-semisimple decomposition and factor list of a table file.
    Classify {
        /// Table JSON: {"order", "add", "mul", "zero", "one"}.
        file: PathBuf,
        #[arg(long, default_value_t = semik::lab::DEFAULT_ORDER_LIMIT)]
        order_limit: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    /// Idempotency, strong complement and kernel properties of a matrix file.
    Check {
        /// Matrix JSON: {"kernel", "rows", "cols", "entries"}.
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("semik: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    match commands::run(&cli.command) {
        Ok(mut report) => {
            report.elapsed = start.elapsed();
            println!("{}", emit(&report, cli.format).trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("semik: {e}");
            ExitCode::from(2)
        }
    }
}
