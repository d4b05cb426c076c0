use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Pseudo-Hermitian random-matrix spacing statistics and lattice random walks.
#[derive(Debug, Parser)]
#[command(name = "pseudoherm", version, about)]
pub struct Cli {
    /// Base seed of all random streams.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Exit with code 4 when a goodness-of-fit report fails its threshold.
    #[arg(long = "assert", global = true)]
    pub assert_fit: bool,
    /// Histogram bins.
    #[arg(long, global = true, default_value_t = 50)]
    pub bins: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Eigenvalue spacings of a 2×2 pseudo-Hermitian family.
    #[command(name = "spacing2x2")]
    #[serde(rename = "spacing2x2")]
    Spacing2x2(Spacing2x2Args),
    /// Spacing classes of random circulants or block circulants.
    SpacingCyclic(CyclicArgs),
    /// Entropy relaxation of a biased walk on a periodic lattice.
    Walk(WalkArgs),
    /// Ensemble-averaged occupation decay: closed form, asymptotic series, Monte Carlo.
    RmtDecay(DecayArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Spacing2x2(_) => "spacing2x2",
            Self::SpacingCyclic(_) => "spacing-cyclic",
            Self::Walk(_) => "walk",
            Self::RmtDecay(_) => "rmt-decay",
            Self::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    /// Real eigenvalue pairs.
    Real,
    /// Complex-conjugate eigenvalue pairs.
    Cc,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct Spacing2x2Args {
    /// Family tag F1..F5.
    #[arg(long)]
    pub family: String,
    /// Ensemble width σ.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Number of matrices drawn.
    #[arg(long, default_value_t = 100_000)]
    pub count: usize,
    /// Off-diagonal rescaling ε of F3.
    #[arg(long, default_value_t = 2.0)]
    pub epsilon: f64,
    /// Eigenvalue sector whose spacings are histogrammed.
    #[arg(long, value_enum, default_value_t = Sector::Real)]
    pub sector: Sector,
    /// KS pass threshold for the F1 real-sector law.
    #[arg(long, default_value_t = 0.01)]
    pub ks_threshold: f64,
    /// Upper histogram edge in units of σ.
    #[arg(long, default_value_t = 5.0)]
    pub range_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassArg {
    Cc,
    Rc,
    Generic,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlocksArg {
    None,
    Gaussian,
    Ising,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairsArg {
    All,
    Nearest,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CyclicArgs {
    /// Matrix size N (number of blocks with --blocks gaussian|ising).
    #[arg(long)]
    pub n: usize,
    /// Ensemble weight A of exp(−A Tr M†M) (scalar circulants only).
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Number of matrices drawn.
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = ClassArg::All)]
    pub class: ClassArg,
    #[arg(long, value_enum, default_value_t = BlocksArg::None)]
    pub blocks: BlocksArg,
    /// Standard deviation of the Ising-form parameters a₁, a₂, b₁, b₂.
    #[arg(long, default_value_t = 1.0)]
    pub ising_std: f64,
    /// Pairs entering the rc and generic classes.
    #[arg(long, value_enum, default_value_t = PairsArg::All)]
    pub pairs: PairsArg,
    /// KS pass threshold (default 0.015 scalar, 0.02 Gaussian blocks, 0.05 Ising blocks).
    #[arg(long)]
    pub ks_threshold: Option<f64>,
    /// Upper histogram edge of the unit-mean spacing.
    #[arg(long, default_value_t = 4.0)]
    pub range_max: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct WalkArgs {
    /// Flat key = value config file (keys: sites, w, p, row, start, t_max).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<PathBuf>,
    /// Lattice sites.
    #[arg(long)]
    pub sites: Option<usize>,
    /// Jump probability.
    #[arg(long)]
    pub w: Option<f64>,
    /// Right bias.
    #[arg(long)]
    pub p: Option<f64>,
    /// General hop row a1,a2,...,aN (overrides sites/w/p).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub row: Option<Vec<f64>>,
    /// Site holding all probability at t = 0 (1-based).
    #[arg(long)]
    pub start: Option<usize>,
    /// Last time step written.
    #[arg(long)]
    pub t_max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DecayArgs {
    /// Last time step written.
    #[arg(long, default_value_t = 200)]
    pub t_max: u64,
    /// Lattice size for the Monte Carlo column.
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Monte Carlo realizations per time step (0 disables the column).
    #[arg(long, default_value_t = 0)]
    pub realizations: usize,
    /// Extra lattice sizes whose unscaled mean deviation is written.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
}
