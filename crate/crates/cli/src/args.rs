use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Rate functions, exact probabilities and simulation for the giant
/// component of the random graph G(n, alpha/n).
#[derive(Debug, Parser)]
#[command(name = "giant-ld", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Master seed for all randomness.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The rate function rho -> Phi(rho, alpha) on a uniform grid.
    RateCurve(RateCurveArgs),
    /// Mean-field giant density and the forest saddle-point limits.
    MeanField(MeanFieldArgs),
    /// Solve the forest saddle-point system at finite cutoff r.
    Saddle(SaddleArgs),
    /// Exact finite-n event probabilities.
    Exact(ExactArgs),
    /// Monte Carlo estimates.
    Sample(SampleArgs),
    /// Run the acceptance checks; exit status 1 if any fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RateCurveArgs {
    /// Comma-separated mean degrees.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 1.6, 2.4])]
    pub alpha: Vec<f64>,
    /// Number of grid intervals on [0, 1].
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct MeanFieldArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SaddleArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    /// Largest tree size kept in the generating polynomial.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2000])]
    pub r: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EventKind {
    #[value(alias = "conn")]
    Connected,
    #[value(name = "nocycles", alias = "no-cycles", alias = "forest")]
    NoCycles,
    #[value(name = "allsmall", alias = "all-small")]
    AllSmall,
    #[value(name = "forestsmall", alias = "forest-small")]
    ForestSmall,
    #[value(name = "macrovolume", alias = "macro-volume")]
    MacroVolume,
}

/// A component-size cutoff: a number or the literal `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    Value(usize),
    N,
}

impl Cutoff {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Cutoff::Value(r) => r,
            Cutoff::N => n,
        }
    }
}

pub fn parse_cutoff(s: &str) -> Result<Cutoff, String> {
    if s == "n" {
        return Ok(Cutoff::N);
    }
    s.parse().map(Cutoff::Value).map_err(|_| format!("expected an integer or `n`, got {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arithmetic {
    Rational,
    Float,
}

#[derive(Debug, Args)]
pub struct EventArgs {
    #[arg(long, value_enum)]
    pub event: EventKind,
    /// Component-size cutoff for allsmall, forestsmall and macrovolume.
    #[arg(long, value_parser = parse_cutoff)]
    pub r: Option<Cutoff>,
    /// Macroscopic volume for macrovolume.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub event: EventArgs,
    #[arg(long)]
    pub n: usize,
    /// Edge probability, e.g. `0.5` or `1/3`.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub p: Option<String>,
    /// Mean degree; the edge probability is alpha/n.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Defaults to rational for n <= 200 and float above.
    #[arg(long, value_enum)]
    pub arithmetic: Option<Arithmetic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleMode {
    /// Probability of an event with a 95% interval.
    Estimate,
    /// Empirical decay rate -(1/n) log p_hat.
    RateTable,
    /// Mean fraction of vertices in the largest component.
    Giant,
    /// Histogram of the number of vertices in components larger than r.
    Histogram,
    /// Fraction of graphs with at most one component larger than epsilon n.
    Uniqueness,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value = "estimate")]
    pub mode: SampleMode,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_enum)]
    pub event: Option<EventKind>,
    #[arg(long, value_parser = parse_cutoff)]
    pub r: Option<Cutoff>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Smaller instances; finishes in well under two minutes.
    #[arg(long)]
    pub quick: bool,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub criterion: Vec<u8>,
}
