//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::record::Format;

#[derive(Debug, Parser)]
#[command(
    name = "paoi",
    version,
    about = "Peak AoI analysis and simulation for random-access Poisson networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the success-probability fixed point and classify its regime.
    Solve(CommonArgs),
    /// Peak AoI at the selected steady state.
    Aoi(CommonArgs),
    /// Optimal access probability for a fixed arrival rate.
    OptimizeQ(CommonArgs),
    /// Optimal arrival rate for a fixed access probability.
    OptimizeXi(CommonArgs),
    /// Joint optimum over access probability and arrival rate.
    OptimizeJoint(CommonArgs),
    /// Monte Carlo estimate of peak AoI and link success rate.
    Simulate(CommonArgs),
    /// Evaluate tasks over a one-parameter grid.
    Sweep(SweepArgs),
    /// Regenerate the data behind one of the standard figures.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryArg {
    Window,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Transmitter density.
    #[arg(long, conflicts_with = "lambda_c_r2")]
    pub lambda: Option<f64>,
    /// Set the load λcR² directly; λ is derived from c and R.
    #[arg(long = "lambda-c-r2")]
    pub lambda_c_r2: Option<f64>,
    /// Link distance.
    #[arg(long = "R")]
    pub r: Option<f64>,
    /// Path-loss exponent (> 2).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// SINR decoding threshold.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Transmit SNR (linear).
    #[arg(long, conflicts_with = "noiseless")]
    pub gamma: Option<f64>,
    /// Treat the network as interference limited.
    #[arg(long)]
    pub noiseless: bool,
    /// Channel access probability.
    #[arg(long)]
    pub q: Option<f64>,
    /// Packet arrival probability per slot.
    #[arg(long)]
    pub xi: Option<f64>,
    /// Override the geometry constant c.
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub slots: Option<u64>,
    #[arg(long)]
    pub realizations: Option<usize>,
    #[arg(long = "area-side")]
    pub area_side: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fraction of slots discarded before statistics are collected.
    #[arg(long)]
    pub warmup: Option<f64>,
    /// Ignore interferers farther than this from a receiver.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Write results here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON file supplying default values for any flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Swept parameter: lambda, q, xi, R or theta.
    #[arg(long)]
    pub axis: Option<String>,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    /// Space grid points logarithmically.
    #[arg(long)]
    pub log: bool,
    /// Explicit comma-separated axis values.
    #[arg(long, conflicts_with_all = ["from", "to", "count", "log"])]
    pub values: Option<String>,
    /// Comma-separated tasks: solve, aoi, optimize-q, optimize-xi, optimize-joint, simulate.
    #[arg(long)]
    pub tasks: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub figure: Figure,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Skip simulation columns.
    #[arg(long = "analytic-only")]
    pub analytic_only: bool,
}
