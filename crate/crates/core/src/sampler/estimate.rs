use statrs::distribution::{Beta, ContinuousCDF};

/// A Monte Carlo probability estimate with a 95% Clopper–Pearson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: u64,
    pub successes: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn new(successes: u64, samples: u64, seed: u64) -> Self {
        assert!(samples > 0 && successes <= samples);
        let (ci_low, ci_high) = clopper_pearson(successes, samples, 0.05);
        Estimate {
            p_hat: successes as f64 / samples as f64,
            ci_low,
            ci_high,
            samples,
            successes,
            seed,
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Exact binomial interval with coverage at least `1 - level`.
pub fn clopper_pearson(successes: u64, samples: u64, level: f64) -> (f64, f64) {
    let (x, n) = (successes as f64, samples as f64);
    let half = level / 2.0;
    let low = if successes == 0 {
        0.0
    } else {
        Beta::new(x, n - x + 1.0).expect("positive shapes").inverse_cdf(half)
    };
    let high = if successes == samples {
        1.0
    } else {
        Beta::new(x + 1.0, n - x).expect("positive shapes").inverse_cdf(1.0 - half)
    };
    (low, high)
}
