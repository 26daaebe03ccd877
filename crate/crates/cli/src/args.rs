use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "hodgewalk", version, about = "Hodge Laplacians, simplicial random walks and graph encodings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build the clique complex of a graph and dump it as JSON.
    Build(BuildArgs),
    /// Write a Hodge Laplacian (or a spectral kernel of it) as CSV.
    Laplacian(LaplacianArgs),
    /// Eigendecomposition as CSV, or the exact characteristic polynomial.
    Spectrum(SpectrumArgs),
    /// Betti numbers of every order.
    Betti(BettiArgs),
    /// Write a transition matrix as CSV.
    Walk(WalkArgs),
    /// Compute a positional or structural encoding.
    Encode(EncodeArgs),
    /// Monte Carlo simulation of a walk.
    Simulate(SimulateArgs),
    /// Compare two graphs method by method.
    Distinguish(DistinguishArgs),
    /// Export a gallery object.
    Gallery(GalleryArgs),
    /// Cycle labels from the kernel of L1, plus cycle bases.
    Cycles(CyclesArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InputArgs {
    /// Edge-list file.
    #[arg(short, long, group = "source")]
    pub input: Option<PathBuf>,
    /// Complex JSON file.
    #[arg(long, group = "source")]
    pub complex: Option<PathBuf>,
    /// Gallery object name, e.g. rook4x4 or cycle(6).
    #[arg(long, group = "source")]
    pub gallery: Option<String>,
    /// Highest simplex dimension of the clique complex.
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutArgs {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum VariantArg {
    Standard,
    Normalized,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Full,
    Down,
    Up,
}

#[derive(Debug, Args, Serialize)]
pub struct LaplacianArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value_t = Part::Full)]
    pub part: Part,
    /// Spectral kernel instead of the operator: heat:<beta>,
    /// inverse:<eps> or poly:<c0>,<c1>,...
    #[arg(long)]
    pub kernel: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    pub variant: VariantArg,
    /// Exact integer characteristic polynomial (standard variant only).
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub zero_tol: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct BettiArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    /// Simple random walk on nodes.
    Node,
    /// Lifted walk on oriented edges.
    LiftedEdge,
    /// Lifted walk on oriented k-simplices.
    Lifted,
    /// Up walk on k-simplices through shared cofaces.
    Up,
    DownDirected,
    DownUndirected,
    /// Inter-order walk over simplices of order at most k.
    Inter,
    /// Edge walk over node-sharing and ring-sharing edges.
    Cellular,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WalkSelect {
    #[arg(long, value_enum, default_value_t = WalkKind::LiftedEdge)]
    pub kind: WalkKind,
    /// Simplex order for lifted, up and inter walks.
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 8)]
    pub max_ring: usize,
    /// Merge the two orientations of a lifted walk.
    #[arg(long)]
    pub merged: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct WalkArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub walk: WalkSelect,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub walk: WalkSelect,
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum EncodeMethod {
    Rwse,
    LapPe,
    Resistance,
    Spd,
    EdgeRwse,
    Hodge1lap,
    KRwse,
    InterRwse,
    CellularRwse,
}

#[derive(Debug, Args, Serialize)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub method: EncodeMethod,
    /// Edge walk for edge_rwse: full, directed, undirected or up.
    #[arg(long, default_value = "full")]
    pub variant: String,
    /// Number of walk steps.
    #[arg(short = 'T', long = "steps", default_value_t = 16)]
    pub t: usize,
    /// rwse: diag or full; hodge1lap: proj, abs or sim.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub n_eigen: usize,
    #[arg(long, default_value_t = 0)]
    pub n_random_proj: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Append per-step row variance channels (edge_rwse).
    #[arg(long)]
    pub row_stats: bool,
    /// Simplex order for k_rwse.
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    /// Highest order for inter_rwse.
    #[arg(short = 'K', default_value_t = 2)]
    pub max_order: usize,
    #[arg(long, default_value_t = 8)]
    pub max_ring: usize,
    /// CSV of edge features projected in hodge1lap proj mode; one row per
    /// edge, optional header.
    #[arg(long)]
    pub preimage: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Args, Serialize)]
pub struct DistinguishArgs {
    /// Two gallery names.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "pair")]
    pub gallery: Option<Vec<String>>,
    /// Two edge-list files.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "pair")]
    pub inputs: Option<Vec<PathBuf>>,
    /// Search all graphs with this L0 characteristic polynomial (ascending
    /// integer coefficients, comma separated) for all-order isospectral pairs.
    #[arg(long, group = "pair", allow_hyphen_values = true)]
    pub search_l0: Option<String>,
    #[arg(long, default_value = "all")]
    pub methods: String,
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    #[arg(short = 'T', long = "steps", default_value_t = 20)]
    pub t: usize,
    #[arg(long, default_value_t = 64)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 64)]
    pub fwl2_cap: usize,
    #[arg(long, default_value_t = 4)]
    pub n_eigen: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum GalleryFormat {
    Edges,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct GalleryArgs {
    /// Object name; omit with --list.
    pub name: Option<String>,
    #[arg(long)]
    pub list: bool,
    /// Edge list, or complex JSON (default for objects with explicit faces).
    #[arg(long, value_enum)]
    pub format: Option<GalleryFormat>,
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CyclesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 8)]
    pub n_random_proj: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also list relevant cycles up to this length.
    #[arg(long)]
    pub max_ring: Option<usize>,
    /// Experimental: per-edge |P| 1 for the eigenvalue-1 subspace of L1.
    #[arg(long)]
    pub eigen_one: bool,
    #[command(flatten)]
    pub out: OutArgs,
}
