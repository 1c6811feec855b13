use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "subsetsum", version, about = "Exact pseudopolynomial Subset Sum solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether some sub-multiset sums to the target (randomized, one-sided).
    Solve(SolveArgs),
    /// Count every attainable sum up to the target (randomized, one-sided).
    SolveAllSums(SolveArgs),
    /// Decide the unbounded variant, where items may repeat (deterministic).
    Unbounded(InputArgs),
    /// Decide with the low-space modular circuit evaluator (randomized, one-sided).
    Polyspace(PolyspaceArgs),
    /// Decide with the textbook dynamic program (exact).
    Oracle(InputArgs),
    /// Time the solvers over a sweep of targets and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance file ("n t" header, then the items); stdin when absent or "-".
    pub file: Option<PathBuf>,
    /// Use the target from the file header (the default).
    #[arg(long, conflicts_with = "target")]
    pub target_in_file: bool,
    /// Override the target from the file header.
    #[arg(long)]
    pub target: Option<String>,
    /// Exit with status 1 when the answer is "no".
    #[arg(long)]
    pub exit_status: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Per-sum error probability, clamped to (0, 1/4].
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub delta: f64,
    /// Random seed; drawn from the OS when absent and echoed in the output.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also list the sums (solve-all-sums only).
    #[arg(long)]
    pub print_sums: bool,
}

#[derive(Debug, Args)]
pub struct PolyspaceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Random seed; drawn from the OS when absent and echoed in the output.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of primes to draw the modulus from (default max(64, n²)).
    #[arg(long)]
    pub pool_size: Option<usize>,
    /// Independent (circuit, prime) draws (default keeps the miss rate <= 1e-3).
    #[arg(long)]
    pub repetitions: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Algorithm {
    Faster,
    Bellman,
    Unbounded,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Faster => "faster_subset_sum",
            Algorithm::Bellman => "bellman_all_sums",
            Algorithm::Unbounded => "unbounded_subset_sum",
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Targets to time, doubling from A to B, e.g. 2^14..2^20.
    #[arg(long, default_value = "2^14..2^20")]
    pub t_sweep: String,
    /// Items per random instance.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Runs per (t, algorithm), each on its own instance and seed.
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Algorithms to time.
    #[arg(long, value_delimiter = ',', value_enum, default_values_t = [Algorithm::Faster, Algorithm::Bellman])]
    pub algorithms: Vec<Algorithm>,
    /// Error probability for the randomized solver.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub delta: f64,
    /// Base seed; run r uses seed + r.
    #[arg(long)]
    pub seed: Option<u64>,
}
