use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdds::fdds::DEFAULT_PRODUCT_CAP;

#[derive(Debug, Parser)]
#[command(name = "fdds", version, about = "Algebra and equation solving for finite discrete dynamical systems")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Solver and operand encoding; `auto` picks compact for all-compact
    /// input, general when transients are present, explicit otherwise.
    #[arg(long, value_enum, default_value_t = Mode::Auto, global = true)]
    pub mode: Mode,
    /// Seed for generated instances.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Size bound for generated instances and brute-force enumeration.
    #[arg(long, default_value_t = 8, global = true)]
    pub max_states: usize,
    /// Largest explicit system that may be materialized.
    #[arg(long, default_value_t = DEFAULT_PRODUCT_CAP, global = true)]
    pub cap: usize,
    /// Unroll truncation depth (defaults to the number of states).
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Print the per-iteration solver trace after each solution.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Explicit,
    Compact,
    General,
    Auto,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve equation files; results come out in input order.
    Solve {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Product of two operands.
    Mul { a: PathBuf, b: PathBuf },
    /// Sum of two operands.
    Add { a: PathBuf, b: PathBuf },
    /// Print `isomorphic` or `not-isomorphic`.
    Iso { a: PathBuf, b: PathBuf },
    /// Canonical representative of an operand.
    Canon { a: PathBuf },
    /// Level sizes of every unroll tree, truncated at `--depth`.
    Unroll { a: PathBuf },
    /// Random operands and solvable equations, deterministic per seed.
    Gen {
        #[arg(long, value_enum, default_value_t = GenKind::Poly)]
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        terms: usize,
        #[arg(long, default_value_t = 6)]
        coeff_states: usize,
    },
    /// Time the linear solvers over a size sweep and fit the growth exponent.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchKind::Explicit)]
        kind: BenchKind,
        /// Comma-separated sizes (states for explicit, distinct lengths for compact).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Re-encode an operand.
    Convert {
        a: PathBuf,
        #[arg(long, value_enum)]
        to: Encoding,
    },
    /// Every solution with at most `--max-states` states, by exhaustive search.
    Oracle { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// A random map.
    Fdds,
    /// A random sum of cycles.
    Cycles,
    /// A pseudo-cancelable sum of cycles.
    PseudoCancelable,
    /// `A·X = B` over sums of cycles.
    Linear,
    /// Pseudo-injective polynomial over sums of cycles.
    Poly,
    /// Pseudo-injective polynomial with transient states.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchKind {
    Explicit,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Explicit,
    Compact,
}
