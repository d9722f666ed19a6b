//! `outclass`: batch front end for the outclass library.
//!
//! Every subcommand prints deterministic JSON (or DOT text) and exits with
//! 0 for success/true/equivalent, 1 for false/distinct, 2 for unknown,
//! 64 for usage errors, 65 for invalid input data and 66 for I/O errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "outclass", version, about = "Classification toolkit for finite categories, multiplicity matrices, Bratteli diagrams and permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose two multiplicity morphisms (`left` first, then `right`).
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Whether a multiplicity morphism between two objects exists.
    HomExists(HomArgs),
    /// List all multiplicity morphisms between two objects.
    EnumerateHoms(HomArgs),
    /// Telescope a diagram to the given levels.
    Telescope {
        diagram: PathBuf,
        /// Comma-separated, strictly increasing level indices.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
    },
    /// Decide equivalence of two diagrams within search bounds.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Whether two dimension-group elements are equal.
    K0Eq {
        diagram: PathBuf,
        /// `LEVEL:V1,V2,..`
        #[arg(long)]
        x: String,
        /// `LEVEL:V1,V2,..`
        #[arg(long)]
        y: String,
        /// Largest level examined.
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Whether a dimension-group element is positive.
    K0Pos {
        diagram: PathBuf,
        /// `LEVEL:V1,V2,..`
        #[arg(long)]
        x: String,
        /// Largest level examined.
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Render a diagram as Graphviz DOT.
    Dot {
        diagram: PathBuf,
        /// Make this many levels explicit first (uses the stationary tail).
        #[arg(long)]
        levels: Option<usize>,
        /// Write to a file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Correct a pair of group homomorphisms with mutually inverse classes
    /// into mutually inverse homomorphisms.
    Intertwine {
        /// JSON file `{"f1": hom, "g1": hom}`.
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = Schedule::Adaptive)]
        schedule: Schedule,
        #[arg(long, value_enum, default_value_t = Oracle::Exhaustive)]
        oracle: Oracle,
        #[arg(long, default_value_t = 64)]
        max_rounds: usize,
    },
    /// Rebuild and check the A3 → A6 → A7 non-closure example.
    VerifyCounterexample,
    /// Check the exchange axiom, build the quotient and test the
    /// super-strong property on a category spec.
    QuotientCheck {
        /// Spec JSON file.
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        spec: Option<PathBuf>,
        /// `a5`, `matcat:N`, `injections:N` or `all-maps:N`.
        #[arg(long)]
        builtin: Option<String>,
        /// Print the spec JSON instead of checking it.
        #[arg(long)]
        emit_spec: bool,
    },
}

#[derive(Args, Debug)]
struct HomArgs {
    /// Size vector such as `(1,2)`.
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    /// Require `matrix · source = target`.
    #[arg(long)]
    unital: bool,
    /// Exclude the zero matrix.
    #[arg(long)]
    no_zero: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Commuting triangles required of a witness.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Levels `0..level_bound` of each diagram are searched.
    #[arg(long, default_value_t = 8)]
    level_bound: usize,
    /// Largest matrix entry tried.
    #[arg(long, default_value_t = 16)]
    entry_bound: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Schedule {
    Adaptive,
    Geometric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Oracle {
    Exhaustive,
    First,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("outclass: {e}");
            ExitCode::from(e.code())
        }
    }
}
