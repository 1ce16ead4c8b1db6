use std::fmt;

use crate::error::{domain, Result};

/// A probability carried as its natural logarithm.
///
/// Probability zero is represented by `-inf`; the stored value is never
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);
    pub const ONE: LogProb = LogProb(0.0);

    pub fn new(log_value: f64) -> Result<Self> {
        if log_value.is_nan() || log_value > 0.0 {
            return domain(format!("log-probability must be <= 0, got {log_value}"));
        }
        Ok(LogProb(log_value))
    }

    /// Clamps rounding excursions above zero (a few ulps) back to `log 1`.
    pub(crate) fn from_rounded(log_value: f64) -> Self {
        debug_assert!(!log_value.is_nan());
        LogProb(log_value.min(0.0))
    }

    pub fn from_prob(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("probability must lie in [0,1], got {p}"));
        }
        Ok(LogProb(p.ln()))
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn prob(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `-(1/n) log P`, the empirical decay rate per vertex.
    pub fn rate_per_vertex(self, n: u64) -> f64 {
        -self.0 / n as f64
    }

    /// `P^{1/n}`.
    pub fn nth_root(self, n: u64) -> f64 {
        (self.0 / n as f64).exp()
    }
}

impl fmt::Display for LogProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `log(Σ exp(x_i))` without overflow; `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    if max == f64::INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}
