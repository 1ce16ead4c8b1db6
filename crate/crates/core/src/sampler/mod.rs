//! Monte Carlo simulation of `G(n, α/n)`.
//!
//! Edges are drawn by geometric skipping over the `C(n,2)` edge slots and
//! merged with union-find. Sample `i` under master seed `s` uses ChaCha8
//! seeded from `s` on stream `i`, so results do not depend on how samples
//! are split across threads.

mod census;
mod dsu;
mod estimate;

pub use census::ComponentCensus;
pub use dsu::Dsu;
pub use estimate::{clopper_pearson, Estimate};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::exact::EventSpec;
use crate::rate::AlphaParam;

/// Successes below this count make a rate-table row unresolved.
pub const MIN_SUCCESSES: u64 = 10;

/// Reusable sampler for one `(n, p)`.
#[derive(Debug, Clone)]
pub struct GraphSampler {
    n: usize,
    slots: u64,
    gap: Option<Geometric>,
    dsu: Dsu,
}

impl GraphSampler {
    pub fn new(n: usize, alpha: AlphaParam) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        let a = alpha.value();
        if a > n as f64 {
            return Err(Error::Domain(format!("alpha = {a} exceeds n = {n}")));
        }
        Self::with_p(n, a / n as f64)
    }

    pub fn with_p(n: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("edge probability {p} is outside [0, 1]")));
        }
        let gap = if p > 0.0 {
            Some(Geometric::new(p).map_err(|e| Error::Domain(e.to_string()))?)
        } else {
            None
        };
        let n64 = n as u64;
        Ok(GraphSampler { n, slots: n64 * (n64 - 1) / 2, gap, dsu: Dsu::new(n) })
    }

    /// Draws one graph and returns its census.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> ComponentCensus {
        self.dsu.reset(self.n);
        let (mut edges, mut redundant) = (0u64, 0u64);
        if let Some(gap) = &self.gap {
            // slot s ↦ (i, j) with i < j; row j starts at j(j-1)/2
            let mut j = 1u64;
            let mut row_start = 0u64;
            let mut slot = gap.sample(rng);
            while slot < self.slots {
                while slot >= row_start + j {
                    row_start += j;
                    j += 1;
                }
                let i = slot - row_start;
                edges += 1;
                if !self.dsu.union(i as u32, j as u32) {
                    redundant += 1;
                }
                slot = match slot.checked_add(1 + gap.sample(rng)) {
                    Some(s) => s,
                    None => break,
                };
            }
        }
        ComponentCensus::new(self.n, self.dsu.component_sizes().collect(), edges, redundant)
    }
}

/// The generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One graph from `G(n, α/n)`, a function of `seed` alone.
pub fn sample_census(n: usize, alpha: AlphaParam, seed: u64) -> Result<ComponentCensus> {
    let mut s = GraphSampler::new(n, alpha)?;
    Ok(s.sample(&mut sample_rng(seed, 0)))
}

/// Folds `visit` over `samples` graphs into per-worker accumulators and
/// merges them. Accumulators should use exact (integer) arithmetic so the
/// result does not depend on the merge order.
pub fn fold_samples<A, V, M>(
    sampler: &GraphSampler,
    samples: u64,
    seed: u64,
    identity: impl Fn() -> A + Sync + Send,
    visit: V,
    merge: M,
) -> A
where
    A: Send,
    V: Fn(&mut A, &ComponentCensus) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..samples)
            .into_par_iter()
            .fold(
                || (sampler.clone(), identity()),
                |(mut s, mut acc), i| {
                    let c = s.sample(&mut sample_rng(seed, i));
                    visit(&mut acc, &c);
                    (s, acc)
                },
            )
            .map(|(_, acc)| acc)
            .reduce(&identity, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &merge;
        let mut s = sampler.clone();
        let mut acc = identity();
        for i in 0..samples {
            let c = s.sample(&mut sample_rng(seed, i));
            visit(&mut acc, &c);
        }
        acc
    }
}

/// Fraction of `samples` graphs in `event`, with a Clopper–Pearson interval.
pub fn estimate_event(n: usize, alpha: AlphaParam, event: &EventSpec, samples: u64, seed: u64) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    event.validate(n)?;
    let sampler = GraphSampler::new(n, alpha)?;
    let hits = fold_samples(
        &sampler,
        samples,
        seed,
        || 0u64,
        |acc, c| *acc += c.satisfies(event) as u64,
        |a, b| a + b,
    );
    Ok(Estimate::new(hits, samples, seed))
}

/// Counts of `|V_r| = m` for `m = 0..=n`.
pub fn macro_volume_histogram(n: usize, alpha: AlphaParam, r: usize, samples: u64, seed: u64) -> Result<Vec<u64>> {
    let sampler = GraphSampler::new(n, alpha)?;
    Ok(fold_samples(
        &sampler,
        samples,
        seed,
        || vec![0u64; n + 1],
        |acc, c| acc[c.v_r(r)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    ))
}

/// Mean and standard error of `largest / n`.
pub fn giant_fraction(n: usize, alpha: AlphaParam, samples: u64, seed: u64) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    let sampler = GraphSampler::new(n, alpha)?;
    let (sum, sum_sq) = fold_samples(
        &sampler,
        samples,
        seed,
        || (0u128, 0u128),
        |acc, c| {
            let l = c.largest() as u128;
            acc.0 += l;
            acc.1 += l * l;
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    let k = samples as f64;
    let scale = n as f64;
    let mean = sum as f64 / k;
    let var = if samples > 1 { ((sum_sq as f64) - k * mean * mean).max(0.0) / (k - 1.0) } else { 0.0 };
    Ok((mean / scale, (var / k).sqrt() / scale))
}

/// Fraction of samples with at most one component larger than `⌈εn⌉`.
pub fn uniqueness_frequency(n: usize, alpha: AlphaParam, epsilon: f64, samples: u64, seed: u64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1".into()));
    }
    let r = (epsilon * n as f64).ceil() as usize;
    let sampler = GraphSampler::new(n, alpha)?;
    let hits = fold_samples(
        &sampler,
        samples,
        seed,
        || 0u64,
        |acc, c| *acc += (c.n_r(r) <= 1) as u64,
        |a, b| a + b,
    );
    Ok(hits as f64 / samples as f64)
}

/// One row of an empirical rate table.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub alpha: f64,
    pub n: usize,
    pub estimate: Estimate,
    /// `-(1/n) ln p_hat`, absent when the row is unresolved.
    pub rate: Option<f64>,
    /// Rate interval from the probability interval; the upper end is
    /// infinite when the lower probability bound is 0.
    pub rate_ci: (f64, f64),
    /// Fewer than [`MIN_SUCCESSES`] successes.
    pub unresolved: bool,
}

/// Empirical `-(1/n) ln P(event)` over a grid of `α` and `n`.
pub fn empirical_rate_table(
    alphas: &[f64],
    ns: &[usize],
    event: &EventSpec,
    samples: u64,
    seed: u64,
) -> Result<Vec<RateRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * ns.len());
    for &a in alphas {
        let alpha = AlphaParam::new(a)?;
        for &n in ns {
            let e = estimate_event(n, alpha, event, samples, seed)?;
            let nf = n as f64;
            let unresolved = e.successes < MIN_SUCCESSES;
            rows.push(RateRow {
                alpha: a,
                n,
                rate: (!unresolved).then(|| -e.p_hat.ln() / nf),
                rate_ci: (-e.ci_high.ln() / nf, -e.ci_low.ln() / nf),
                estimate: e,
                unresolved,
            });
        }
    }
    Ok(rows)
}
