use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "chebsim", version, about = "Chebyshev simulation of Gaussian Markov random fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate Matérn fields and write rasters plus a run manifest.
    Simulate(SimulateArgs),
    /// Print the precision threshold table for one significance level.
    Tables(TablesArgs),
    /// Check simulations against the dense and Cholesky oracles.
    Validate(ValidateArgs),
    /// Time the sampler over a ladder of orders and grid sizes.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Mesh file (`n_nodes n_triangles`, node lines, triangle lines). Without
    /// it a regular grid is used.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Per-triangle `h11 h12 h22` lines.
    #[arg(long)]
    pub anisotropy: Option<PathBuf>,
    /// Grid nodes along x in the output window.
    #[arg(long, default_value_t = 64)]
    pub nx: usize,
    /// Grid nodes along y in the output window.
    #[arg(long, default_value_t = 64)]
    pub ny: usize,
    /// Grid spacing.
    #[arg(long, default_value_t = 1.0)]
    pub h: f64,
    /// Extra margin simulated around the grid and cropped away
    /// (default: twice the range).
    #[arg(long)]
    pub buffer: Option<f64>,
    /// Range, converted to the scale by `φ = range / sqrt(12ν)`.
    #[arg(long, conflicts_with = "scale")]
    pub range: Option<f64>,
    /// Scale φ = 1/κ.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Smoothness ν.
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    /// Marginal variance σ².
    #[arg(long, default_value_t = 1.0)]
    pub sill: f64,
    /// SPDE exponent α; must equal ν + 1 when given.
    #[arg(long)]
    pub alpha_spde: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct OrderArgs {
    /// Significance α of the variance test.
    #[arg(long, default_value_t = 0.05)]
    pub significance: f64,
    /// Tolerated relative increase γ of the rejection rate.
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    /// Sample size N of the variance test.
    #[arg(long = "n-samples", default_value_t = 1000)]
    pub n_samples: usize,
    /// Euclidean tolerance η for order reduction.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Forced order K, bypassing the statistical criterion.
    #[arg(long)]
    pub order: Option<usize>,
    /// Upper limit of the order search.
    #[arg(long, default_value_t = chebsim::simulate::DEFAULT_K_MAX)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of simulations (default 1 for simulate, 50 for validate).
    #[arg(long = "n-sims")]
    pub n_sims: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub order: OrderArgs,
    /// Output directory.
    #[arg(long, default_value = "chebsim-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, default_value_t = 0.05)]
    pub significance: f64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub order: OrderArgs,
    /// Random directions for the projection test.
    #[arg(long, default_value_t = 1000)]
    pub directions: usize,
    /// Allowed ratio of the variogram deviation to that of exact samples.
    #[arg(long, default_value_t = 3.0)]
    pub parity: f64,
    #[arg(long, default_value = "chebsim-validate")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Grid sides of the ladder (square grids, spacing 1).
    #[arg(long, value_delimiter = ',', default_values_t = vec![32, 64, 128])]
    pub sizes: Vec<usize>,
    /// Orders of the ladder.
    #[arg(long, value_delimiter = ',', default_values_t = vec![16, 32, 64])]
    pub orders: Vec<usize>,
    #[arg(long, default_value_t = 8.0)]
    pub range: f64,
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long = "n-sims", default_value_t = 4)]
    pub n_sims: usize,
    /// Timings per row; the fastest is kept.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
