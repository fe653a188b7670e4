use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sierpinski", version, about = "Steiner tree packings and properties of Sierpinski graphs S(n, l)")]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: available parallelism; 1 runs sequentially).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write S(n, l) as DOT or JSON.
    Gen(GenArgs),
    /// Build and verify a Steiner tree packing.
    Pack(PackArgs),
    /// Exact packing numbers by exhaustive search on small graphs.
    Oracle(OracleArgs),
    /// Order, size, degrees, density, clustering, diameter and entropy as CSV.
    Props(PropsArgs),
    /// Edge-disjoint Hamiltonian paths of K_N or S(n, l).
    Hamdecomp(HamArgs),
    /// Re-check a tree set written by `pack`.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Depth n (word length).
    #[arg(short = 'n')]
    pub n: usize,
    /// Base l (size of the complete graph replicated at each level).
    #[arg(short = 'l')]
    pub l: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Size cap for materialized output; the default comes from SIERPINSKI_CAP
    /// when set.
    #[arg(long)]
    pub cap: Option<u128>,
    /// Acknowledge caps raised above their defaults.
    #[arg(long = "unsafe")]
    pub allow_unsafe: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Number of targets.
    #[arg(short = 'k')]
    pub k: Option<usize>,
    /// Explicit targets as comma-separated words, e.g. 00,11,22.
    #[arg(long = "u", value_delimiter = ',', conflicts_with = "policy")]
    pub words: Option<Vec<String>>,
    /// How to choose targets when --u is not given.
    #[arg(long = "u-policy", value_enum)]
    pub policy: Option<Policy>,
    /// Seed for --u-policy random.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// k distinct vertices drawn uniformly with --seed.
    Random,
    /// The extreme vertex of each of the first k top-level cells.
    Worst,
    /// All l extreme vertices.
    Extreme,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Paper,
    Minimal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlavorArg {
    Edge,
    Vertex,
    Both,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Args, Debug)]
pub struct PackArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub targets: TargetArgs,
    #[arg(long, value_enum, default_value = "paper")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Where to write the tree set (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Search K_N instead of S(n, l).
    #[arg(long, conflicts_with_all = ["n", "l"])]
    pub complete: Option<usize>,
    #[arg(short = 'n', requires = "l")]
    pub n: Option<usize>,
    #[arg(short = 'l', requires = "n")]
    pub l: Option<usize>,
    #[command(flatten)]
    pub targets: TargetArgs,
    #[arg(long, value_enum, default_value = "edge")]
    pub flavor: FlavorArg,
    /// Largest number of subsets to enumerate when no targets are given.
    #[arg(long, default_value_t = 100_000)]
    pub max_subsets: u128,
    #[arg(long, default_value_t = 30)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 60)]
    pub max_edges: usize,
    /// Search-node budget per subset; results past it are marked incomplete.
    #[arg(long, default_value_t = 500_000_000)]
    pub max_nodes: u64,
    /// Wall-clock budget per subset in seconds.
    #[arg(long)]
    pub timeout_secs: Option<u64>,
    /// Record milliseconds in the CSV (otherwise written as 0).
    #[arg(long)]
    pub timing: bool,
    /// Report format when writing to --out or stdout.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "unsafe")]
    pub allow_unsafe: bool,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Emit rows for every t in 1..=n instead of t = n only.
    #[arg(long)]
    pub sweep: bool,
    /// Also sweep l up to this value.
    #[arg(long)]
    pub l_max: Option<usize>,
    /// Write props.csv, degrees.csv and entropy.csv here (default: props.csv to stdout).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Args, Debug)]
pub struct HamArgs {
    /// Decompose K_N.
    #[arg(long, conflicts_with = "sierpinski")]
    pub complete: Option<usize>,
    /// Decompose S(n, l) (needs -n and -l).
    #[arg(long, requires_all = ["n", "l"])]
    pub sierpinski: bool,
    #[arg(short = 'n')]
    pub n: Option<usize>,
    #[arg(short = 'l')]
    pub l: Option<usize>,
    /// Prescribed endpoints for K_N paths, e.g. 0-3,1-2.
    #[arg(long, value_delimiter = ',', requires = "complete")]
    pub pairs: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Tree-set JSON written by `pack`.
    pub input: PathBuf,
    /// Flavors to check (default: both, or edge for path-based sets).
    #[arg(long, value_enum)]
    pub flavor: Option<FlavorArg>,
}
