//! `hyperhom`: group-homophily profiles, null models, and impossibility
//! certificates for two-class k-uniform hypergraphs.
//!
//! Output is machine-first CSV on stdout (or `--out`), with exact rationals
//! rendered as decimals by default and as `p/q` under `--exact`. Exit codes:
//! 0 success, 1 data error or found violation, 2 usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperhom_core::rational::{parse_rational, Rational};
use hyperhom_core::ClassLabel;

#[derive(Parser)]
#[command(
    name = "hyperhom",
    version,
    about = "Group homophily measures on two-class k-uniform hypergraphs",
    after_help = "Witness specs: 'binomial' (m_t = C(k,t)), 'complete:NA,NB', \
                  'alpha:P/Q', or 'counts:m0,m1,...,mk'."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Affinity, baseline, and ratio scores per group size, type, and class
    Scores(ScoreCommandArgs),
    /// Group homophily index per group size and class
    Ghi(ScoreCommandArgs),
    /// Simple/majority/monotonic homophily verdicts per group size and class
    Verdict(VerdictArgs),
    /// Bootstrap resampling of affinity scores
    Bootstrap(BootstrapArgs),
    /// Sample a hypergraph from the cardinality-based null model
    Hsbm(HsbmArgs),
    /// Ratio-convergence experiment over growing node counts
    Converge(ConvergeArgs),
    /// Build a dual certificate and check it exactly
    Verify(VerifyArgs),
    /// Strictly feasible point after removing one majority constraint
    Witness(WitnessArgs),
    /// Randomized impossibility search over integer count vectors
    Search(SearchArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Edges file: one hyperedge per line, comma- or whitespace-separated
    #[arg(long, requires = "labels")]
    edges: Option<PathBuf>,
    /// Labels file: node,label per line
    #[arg(long, requires = "focal")]
    labels: Option<PathBuf>,
    /// Label mapped to class A; all other labels form class B
    #[arg(long)]
    focal: Option<String>,
    /// Compositions file: k,t,count per line (t = in-class members)
    #[arg(long, conflicts_with = "edges")]
    compositions: Option<PathBuf>,
    /// Collapse repeated member sets into a single edge
    #[arg(long)]
    dedup: bool,
    /// Edges containing unlabeled nodes: fail or drop them
    #[arg(long, value_enum, default_value_t = OnUnlabeled::Error)]
    on_unlabeled: OnUnlabeled,
    /// Analyze a single group size
    #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
    k: Option<usize>,
    /// Smallest group size of a range (with --k-max)
    #[arg(long, requires = "k_max")]
    k_min: Option<usize>,
    /// Largest group size of a range (with --k-min)
    #[arg(long, requires = "k_min")]
    k_max: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OnUnlabeled {
    Error,
    Drop,
}

#[derive(Args, Clone)]
struct BaselineArgs {
    /// Baseline family for ratio scores
    #[arg(long, value_enum, default_value_t = BaselineChoice::Asymptotic)]
    baseline: BaselineChoice,
    /// Class-A share for asymptotic baselines (rational like 1/2 or 0.5);
    /// defaults to |A|/n of the loaded data, required for compositions
    #[arg(long, value_parser = parse_rational_arg)]
    alpha: Option<Rational>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaselineChoice {
    Exact,
    Asymptotic,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit exact rationals (p/q) instead of decimals
    #[arg(long)]
    exact: bool,
    /// Significant digits for decimal rendering
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

#[derive(Args)]
struct ScoreCommandArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerdictArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Also report the even-k middle-type comparison columns
    #[arg(long)]
    mid_check: bool,
}

#[derive(Args)]
struct BootstrapArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    baseline: BaselineArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Resampling repetitions
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct HsbmArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Number of class-A nodes
    #[arg(long)]
    n_a: usize,
    /// Tuple probability: one value for all types, or k+1 comma-separated
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Poisson multiplicities instead of Bernoulli inclusion
    #[arg(long)]
    poisson: bool,
    /// Destination for the edges file
    #[arg(long)]
    out_edges: PathBuf,
    /// Destination for the labels file (labels A and B, focal A)
    #[arg(long)]
    out_labels: PathBuf,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Node counts, comma separated (e.g. 50,100,200,400)
    #[arg(long)]
    n_list: String,
    #[arg(long)]
    k: usize,
    /// Class-A share
    #[arg(long, value_parser = parse_rational_arg, default_value = "1/2")]
    alpha: Rational,
    /// Uniform tuple probability
    #[arg(long)]
    p: f64,
    /// Number of seeds (seed schedule: --seed + index)
    #[arg(long, default_value_t = 20)]
    num_seeds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    k: usize,
    /// Baseline witness spec (see --help footer)
    #[arg(long)]
    witness: String,
    #[arg(long, value_enum, default_value_t = VariantChoice::Standard)]
    variant: VariantChoice,
    /// Even-k middle constraint class (defaults to A for even k)
    #[arg(long, value_enum)]
    mid: Option<MidChoice>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    witness: String,
    /// Constraint to remove, as CLASS,T (e.g. A,2 or B,3)
    #[arg(long)]
    remove: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    witness: String,
    #[arg(long, value_enum, default_value_t = VariantChoice::Standard)]
    variant: VariantChoice,
    /// Even-k middle constraint to include in the majority predicate
    #[arg(long, value_enum, default_value_t = MidChoice::None)]
    mid: MidChoice,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest sampled count per coordinate
    #[arg(long, default_value_t = 1000)]
    max_coordinate: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantChoice {
    Standard,
    Alternative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MidChoice {
    None,
    A,
    B,
}

impl MidChoice {
    fn to_class(self) -> Option<ClassLabel> {
        match self {
            MidChoice::None => None,
            MidChoice::A => Some(ClassLabel::A),
            MidChoice::B => Some(ClassLabel::B),
        }
    }
}

fn parse_rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text)
        .ok_or_else(|| format!("'{text}' is not a rational (use p/q, n, or a decimal)"))
}

/// Invalid argument combinations detected after parsing; exits with the
/// usage status, like clap's own errors.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scores(args) => commands::run_scores(args),
        Command::Ghi(args) => commands::run_ghi(args),
        Command::Verdict(args) => commands::run_verdict(args),
        Command::Bootstrap(args) => commands::run_bootstrap(args),
        Command::Hsbm(args) => commands::run_hsbm(args),
        Command::Converge(args) => commands::run_converge(args),
        Command::Verify(args) => commands::run_verify(args),
        Command::Witness(args) => commands::run_witness(args),
        Command::Search(args) => commands::run_search(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            if let Some(usage) = err.downcast_ref::<UsageError>() {
                eprintln!("usage error: {}", usage.0);
                ExitCode::from(2)
            } else {
                eprintln!("{err}");
                ExitCode::from(1)
            }
        }
    }
}
