use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use hardy_core::SpinJ;

/// Seed used by every randomized procedure unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 7;

pub const SUITES: [&str; 8] = [
    "oracle-triangle",
    "rank-laws",
    "eigenbasis",
    "appendix-a",
    "appendix-b",
    "hardy-conditions",
    "no-go",
    "invariants",
];

#[derive(Parser, Debug, Clone)]
#[command(name = "hardy", version, about = "Hardy nonlocality for two spin-j particles")]
pub struct Cli {
    /// Worker threads for grid and search work [default: all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Seed for randomized procedures
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Log progress to stderr (repeat for more detail)
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// q of the maximally nonlocal state over a (θ₁, θ₂) grid
    Surface(SurfaceArgs),
    /// Maximize q over the observable angles
    Optimize(OptimizeArgs),
    /// Maximally nonlocal Hardy state for one choice of observables
    State(StateArgs),
    /// Run verification suites; exit status 1 if any check fails
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArgs {
    /// Spin as an exact rational, e.g. 1/2, 1, 3/2
    #[arg(long)]
    pub j: SpinJ,

    /// Grid points per axis, θ_k = (k + ½)π/n
    #[arg(long, default_value_t = 64)]
    pub grid: usize,

    /// Only the diagonal θ₁ = θ₂
    #[arg(long)]
    pub diagonal: bool,

    /// Report angles in radians instead of degrees
    #[arg(long)]
    pub radians: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub j: SpinJ,

    /// Coarse grid points per axis
    #[arg(long, default_value_t = 64)]
    pub grid: usize,

    /// Simplex tolerance on the angles (radians)
    #[arg(long, default_value = "1e-10")]
    pub refine_tol: f64,

    /// Also optimize the azimuths φ₁, φ₂
    #[arg(long)]
    pub full_phi: bool,

    #[arg(long)]
    pub radians: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    #[arg(long)]
    pub j: SpinJ,

    /// Polar angle of Â₁ [default: optimized]
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: Option<f64>,

    /// Polar angle of B̂₁ [default: optimized]
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<f64>,

    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi1: f64,

    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi2: f64,

    /// Angles are given in radians instead of degrees
    #[arg(long)]
    pub radians: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Suite to run (repeatable) [default: all]
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    pub suite: Vec<String>,

    /// Restrict spin-dependent suites to these spins (repeatable)
    #[arg(long)]
    pub j: Vec<SpinJ>,

    /// Probability below which a Hardy zero-condition counts as satisfied
    #[arg(long, default_value = "1e-18")]
    pub tol_zero: f64,

    /// Probability above which q counts as positive
    #[arg(long, default_value = "1e-12")]
    pub tol_pos: f64,

    /// Agreement tolerance between q from the pipeline and the closed forms
    /// (spin 2 is checked at ten times this)
    #[arg(long, default_value = "1e-10")]
    pub tol_agree: f64,

    /// Check a state file written by `hardy state`; only the suites named with --suite run alongside it
    #[arg(long)]
    pub state: Option<PathBuf>,

    /// Report file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}
