//! End-to-end acceptance checks, shared by the `verify` subcommand and the
//! test suite. Each criterion returns a [`CriterionReport`]; none of them
//! panics on failure.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combin::{factorial_exact, pairs};
use crate::error::Result;
use crate::exact::{self, brute, partition, rational, EdgeProb, EventSpec, ExactProb};
use crate::rate::{self, AlphaParam, Density};
use crate::saddle;
use crate::sampler;

/// How much work each criterion does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// Every criterion at its stated size.
    Full,
    /// Reduced sizes for a fast smoke run.
    Quick,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn(Scale) -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, Check); 10] = [
    (1, "mean-field fixed point minimises the rate", mean_field_minimizer),
    (2, "connectivity bracket, exact", connectivity_bracket),
    (3, "connectivity rate at n = 200", connectivity_rate),
    (4, "forest rate at n = 2000", forest_rate),
    (5, "no-big-components sandwich", sandwich),
    (6, "saddle-point limits", saddle_limits),
    (7, "DPs equal brute-force enumeration", oracle_equivalence),
    (8, "grounded digraph equals connectivity", grounded_equality),
    (9, "sampler against exact law and mean field", sampling_scale),
    (10, "convexity of the splitting exponent", convexity),
];

/// Names of the criteria, in order.
pub fn criteria() -> impl Iterator<Item = (u8, &'static str)> {
    CRITERIA.iter().map(|&(id, name, _)| (id, name))
}

/// Runs criterion `id` (1..=10).
pub fn run_criterion(id: u8, scale: Scale) -> Option<CriterionReport> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = match check(scale) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionReport { id, name, passed, detail, elapsed: start.elapsed() })
}

pub fn run_all(scale: Scale) -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, scale)).collect()
}

fn al(a: f64) -> Result<AlphaParam> {
    AlphaParam::new(a)
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn alpha_over_n(alpha: &BigRational, n: usize) -> BigRational {
    alpha / BigRational::from_integer(BigInt::from(n))
}

/// `p = a/b` as the pair `(a, b − a, b)` of nonnegative integers.
fn parts(p: &BigRational) -> (BigUint, BigUint, BigUint) {
    let a = p.numer().to_biguint().expect("nonnegative");
    let b = p.denom().to_biguint().expect("positive");
    let d = &b - &a;
    (a, d, b)
}

fn mean_field_minimizer(_: Scale) -> Result<(bool, String)> {
    let (mut worst_arg, mut worst_min) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let a = al(5.0 * i as f64 / 99.0)?;
        let (arg, min) = rate::minimize_phi(a);
        let star = rate::mean_field_maximal(a);
        worst_arg = worst_arg.max((arg.value() - star.value()).abs());
        worst_min = worst_min.max(min.abs());
    }
    Ok((
        worst_arg <= 1e-6 && worst_min <= 1e-8,
        format!("max |argmin - rho*| = {worst_arg:.2e}, max |min phi| = {worst_min:.2e} over 100 alphas"),
    ))
}

fn connectivity_bracket(scale: Scale) -> Result<(bool, String)> {
    let n_max = if scale == Scale::Full { 200 } else { 80 };
    let alphas = [ratio(1, 2), ratio(1, 1), ratio(2, 1), ratio(4, 1)];
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut failures = Vec::new();
    for alpha in &alphas {
        for n in 2..=n_max {
            let p = alpha_over_n(alpha, n);
            if p > BigRational::one() {
                skipped += 1;
                continue;
            }
            let prob = rational::connectivity(n, &p)?;
            // bound = (1 − (d/b)^{n−1})^{n−1} = (B − D)^{n−1} / B^{n−1}
            let (_, d, b) = parts(&p);
            let e = (n - 1) as u32;
            let big_b = Pow::pow(&b, e);
            let upper_num = Pow::pow(&big_b - Pow::pow(&d, e), e);
            let upper_den = Pow::pow(&big_b, e);
            let lhs = prob.num() * &upper_den;
            let rhs = &upper_num * prob.den();
            let within = lhs <= rhs && &lhs * BigUint::from(n) >= rhs;
            if !within {
                failures.push(format!("n={n} alpha={alpha}"));
            }
            checked += 1;
        }
    }
    let scope = if n_max == 200 { String::new() } else { format!(" (quick: n <= {n_max})") };
    Ok((
        failures.is_empty(),
        format!(
            "{checked} cases inside [bound/n, bound], {} outside, {skipped} skipped with alpha/n > 1{scope}{}",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!("; first: {}", failures[0]) }
        ),
    ))
}

fn connectivity_rate(_: Scale) -> Result<(bool, String)> {
    let n = 200usize;
    let tol = 5.0 * (n as f64).ln() / n as f64;
    let mut ok = true;
    let mut parts_out = Vec::new();
    for a in [2u64, 4] {
        let p = alpha_over_n(&ratio(a, 1), n);
        let lp = rational::connectivity(n, &p)?.log_prob();
        let err = (lp.rate_per_vertex(n as u64) + rate::pi1(al(a as f64)?).ln()).abs();
        ok &= err <= tol;
        parts_out.push(format!("alpha={a}: |error| = {err:.3e}"));
    }
    Ok((ok, format!("{} (tolerance {tol:.3e})", parts_out.join(", "))))
}

fn forest_rate(_: Scale) -> Result<(bool, String)> {
    let n = 2000usize;
    let mut ok = true;
    let mut out = Vec::new();
    for (a, want) in [(2.0, 2.0 * (-0.75f64).exp()), (0.5, 1.0)] {
        let p = EdgeProb::from_alpha_f64(n, a)?;
        let root = exact::exact_forest(n, &p, None)?.nth_root(n as u64);
        ok &= (root - want).abs() <= 0.02;
        out.push(format!("alpha={a}: P(L)^(1/n) = {root:.6} vs {want:.6}"));
    }
    Ok((ok, out.join(", ")))
}

struct Sandwich {
    forest_small: ExactProb,
    small: ExactProb,
    forest: ExactProb,
}

impl Sandwich {
    fn new(n: usize, p: &BigRational, r: usize) -> Result<Self> {
        Ok(Sandwich {
            forest_small: rational::forest(n, p, r)?,
            small: rational::small_components(n, p, r)?,
            forest: rational::forest(n, p, n)?,
        })
    }

    /// `P(L∩B_r) ≤ P(B_r) ≤ P(L) (1−p)^{−rn/2}`, compared exactly. All three
    /// share the denominator `b^{C(n,2)}`, so only numerators matter.
    fn holds(&self, p: &BigRational, n: usize, r: usize) -> bool {
        let (_, d, b) = parts(p);
        let k = (r * n) as u32;
        let lower = self.forest_small.num() <= self.small.num();
        let lhs = Pow::pow(self.small.num(), 2u32) * Pow::pow(&d, k);
        let rhs = Pow::pow(self.forest.num(), 2u32) * Pow::pow(&b, k);
        lower && lhs <= rhs
    }

    /// `(P(L∩B_r)^{1/n}, P(B_r)^{1/n}, P(L)^{1/n}, cap^{1/n})`.
    fn roots(&self, n: usize, p: f64, r: usize) -> (f64, f64, f64, f64) {
        let root = |x: &ExactProb| x.log_prob().nth_root(n as u64);
        let forest = root(&self.forest);
        let cap = forest * (-(r as f64) / 2.0 * (-p).ln_1p()).exp();
        (root(&self.forest_small), root(&self.small), forest, cap)
    }
}

fn sandwich(_: Scale) -> Result<(bool, String)> {
    let alpha = ratio(2, 1);
    let rs = [2usize, 5, 10, 20];
    let ns = [50usize, 100, 200];
    let mut inequalities = true;
    // gaps[i][j] for ns[i], rs[j]
    let mut full_gap = vec![vec![0.0; rs.len()]; ns.len()];
    let mut lower_gap = vec![0.0; rs.len()];
    for (i, &n) in ns.iter().enumerate() {
        let p = alpha_over_n(&alpha, n);
        let pf = p.to_f64().unwrap_or(f64::NAN);
        for (j, &r) in rs.iter().enumerate() {
            let s = Sandwich::new(n, &p, r)?;
            let (lo, mid, forest, cap) = s.roots(n, pf, r);
            inequalities &= lo <= mid && mid <= cap;
            if n == 200 {
                inequalities &= s.holds(&p, n, r);
                lower_gap[j] = forest - lo;
            }
            full_gap[i][j] = cap - lo;
        }
    }
    let r_trend = lower_gap.windows(2).all(|w| w[1] < w[0]);
    let n_trend = (0..rs.len()).all(|j| (1..ns.len()).all(|i| full_gap[i][j] < full_gap[i - 1][j]));
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
    Ok((
        inequalities && r_trend && n_trend,
        format!(
            "inequalities {}; P(L)^(1/n) - P(L&B_r)^(1/n) at n=200 over r: {}; cap - lower at r=20 over n: {}",
            if inequalities { "hold" } else { "violated" },
            fmt(&lower_gap),
            fmt(&full_gap.iter().map(|row| row[rs.len() - 1]).collect::<Vec<_>>()),
        ),
    ))
}

fn saddle_limits(_: Scale) -> Result<(bool, String)> {
    let r = 2000;
    let mut worst = 0.0f64;
    let mut worst_rate = 0.0f64;
    for a in [0.5, 2.0, 4.0] {
        let alpha = al(a)?;
        let sol = saddle::solve_saddle(alpha, r)?;
        let lim = saddle::saddle_limits(alpha)?;
        let poly = saddle::TreePolynomial::new(r)?;
        let (f, _) = poly.eval(sol.s_r);
        for err in [sol.s_r - lim.s, sol.rho_r.value() - lim.rho, sol.theta - lim.theta, f - lim.f] {
            worst = worst.max(err.abs());
        }
        worst_rate = worst_rate.max((sol.proxy_rate() - rate::psi(alpha).exp()).abs());
    }
    Ok((
        worst <= 0.01 && worst_rate <= 0.01,
        format!("max limit error {worst:.2e}, max proxy-rate error {worst_rate:.2e} at r = {r}"),
    ))
}

fn oracle_equivalence(_: Scale) -> Result<(bool, String)> {
    let ps = [ratio(1, 4), ratio(1, 2), ratio(2, 3)];
    let mut checks = 0usize;
    let mut failures: Vec<String> = Vec::new();
    let mut float_err = 0.0f64;
    let mut check = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(what);
        }
    };
    for n in 1..=brute::BRUTE_MAX_N {
        for p in &ps {
            let brute = |ev: EventSpec| brute::enumerate_exact(n, p, &ev);
            let real = EdgeProb::Real(p.to_f64().unwrap_or(f64::NAN));
            let mut float_check = |dp: f64, ev: EventSpec| -> Result<()> {
                float_err = float_err.max((dp - brute::enumerate_float(n, real.as_f64(), &ev)?).abs());
                Ok(())
            };

            let conn = rational::connectivity(n, p)?.to_rational();
            check(conn == brute(EventSpec::Connected)?, format!("connected n={n} p={p}"));
            float_check(exact::exact_connectivity(n, &real)?.prob(), EventSpec::Connected)?;

            let plain = rational::forest(n, p, n)?.to_rational();
            check(plain == brute(EventSpec::NoCycles)?, format!("no-cycles n={n} p={p}"));
            for r in 1..=n {
                let ev = EventSpec::NoCyclesAndSmall(r);
                let forest = rational::forest(n, p, r)?.to_rational();
                check(forest == brute(ev)?, format!("{ev} n={n} p={p}"));
                float_check(exact::exact_forest(n, &real, Some(r))?.prob(), ev)?;

                let ev = EventSpec::AllSmall(r);
                let small = rational::small_components(n, p, r)?.to_rational();
                check(small == brute(ev)?, format!("{ev} n={n} p={p}"));
                float_check(exact::exact_small_components(n, &real, r)?.prob(), ev)?;

                // Q through the partition identity for P(L ∩ B_r)
                let via_q = forest_from_q(n, p, r);
                check(via_q == forest, format!("Q identity n={n} r={r} p={p}"));
                for k in 1..=n {
                    check(
                        partition::q_rational(n, k, r) == partition::q_by_partitions(n, k, r),
                        format!("Q listing n={n} k={k} r={r}"),
                    );
                }
            }
            for r in 1..n {
                let law = rational::macro_volume_law(n, p, r)?;
                let law_f = exact::exact_macro_volume_law(n, &real, r)?;
                for (m, (x, xf)) in law.iter().zip(&law_f).enumerate() {
                    let ev = EventSpec::MacroVolume { r, m };
                    check(x.to_rational() == brute(ev)?, format!("{ev} n={n} p={p}"));
                    float_check(xf.prob(), ev)?;
                }
            }
        }
    }
    let ok = failures.is_empty() && float_err <= 1e-12;
    Ok((
        ok,
        format!(
            "{checks} exact comparisons, {} mismatches{}; float route max |error| = {float_err:.1e}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    ))
}

/// `n! Σ_k p^{n−k} q^{C(n,2)−n+k} Q_{n,k,r}`, which equals `P(L ∩ B_r)`.
pub fn forest_from_q(n: usize, p: &BigRational, r: usize) -> BigRational {
    let q = BigRational::one() - p;
    let total_pairs = pairs(n as u64) as usize;
    let mut sum = BigRational::zero();
    for k in 1..=n {
        let qk = partition::q_rational(n, k, r);
        if qk.is_zero() {
            continue;
        }
        let pw = num_traits::pow(p.clone(), n - k);
        let qw = num_traits::pow(q.clone(), total_pairs + k - n);
        sum += qk * pw * qw;
    }
    sum * BigRational::from_integer(BigInt::from(factorial_exact(n as u64)))
}

fn grounded_equality(_: Scale) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c32);
    let mut mismatches = 0;
    for i in 0..20 {
        let n = 2 + i % 4;
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let den: u64 = rng.random_range(1..=10);
                let x = ratio(rng.random_range(0..=den), den);
                m[a][b] = x.clone();
                m[b][a] = x;
            }
        }
        if brute::grounded_exact(&m)? != brute::inhomogeneous_connectivity_exact(&m)? {
            mismatches += 1;
        }
    }
    Ok((mismatches == 0, format!("20 random matrices (n = 2..5), {mismatches} mismatches")))
}

fn sampling_scale(scale: Scale) -> Result<(bool, String)> {
    let (samples, giant_n, giant_samples) = match scale {
        Scale::Full => (1_000_000u64, 100_000usize, 1000u64),
        Scale::Quick => (100_000, 20_000, 200),
    };
    let (n, r) = (50usize, 5usize);
    let alpha = al(2.0)?;
    let p = alpha_over_n(&ratio(2, 1), n);
    let law = rational::macro_volume_law(n, &p, r)?;
    let hist = sampler::macro_volume_histogram(n, alpha, r, samples, 0)?;
    let mut worst_z = 0.0f64;
    let mut bad_bins = Vec::new();
    for (m, (x, &count)) in law.iter().zip(&hist).enumerate() {
        let prob = x.to_f64();
        let expected = samples as f64 * prob;
        let sd = (expected * (1.0 - prob)).sqrt();
        let dev = (count as f64 - expected).abs();
        let within = if sd == 0.0 { dev == 0.0 } else { dev <= 3.0 * sd };
        if sd > 0.0 {
            worst_z = worst_z.max(dev / sd);
        }
        if !within {
            bad_bins.push(format!("m={m}: {count} vs {expected:.2}"));
        }
    }
    let (mean, se) = sampler::giant_fraction(giant_n, alpha, giant_samples, 0)?;
    let giant_ok = (mean - 0.7968).abs() <= 0.005;
    let scope = match scale {
        Scale::Full => "",
        Scale::Quick => " (quick scale)",
    };
    Ok((
        bad_bins.is_empty() && giant_ok,
        format!(
            "{} of {} bins outside 3 sigma (max z = {worst_z:.2}){}; giant fraction at n={giant_n}: {mean:.5} +- {se:.5}{scope}",
            bad_bins.len(),
            n + 1,
            if bad_bins.is_empty() { String::new() } else { format!(" [{}]", bad_bins.join(", ")) },
        ),
    ))
}

fn convexity(_: Scale) -> Result<(bool, String)> {
    let points = 400;
    let (lo, hi) = (1e-3f64.ln(), 50f64.ln());
    let mut min_g = f64::INFINITY;
    for i in 0..points {
        let eta = (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp();
        min_g = min_g.min(rate::g_second_plus_one(eta)?);
    }
    let mut max_asym = 0.0f64;
    let mut min_second = f64::INFINITY;
    for a in [0.5, 1.0, 2.0, 4.0] {
        let alpha = al(a)?;
        let xi: Vec<f64> = (0..=100)
            .map(|i| rate::xi(Density::new(i as f64 / 100.0)?, alpha))
            .collect::<Result<_>>()?;
        for i in 0..=100 {
            max_asym = max_asym.max((xi[i] - xi[100 - i]).abs());
        }
        for w in xi.windows(3) {
            min_second = min_second.min(w[0] - 2.0 * w[1] + w[2]);
        }
    }
    Ok((
        min_g > 0.0 && max_asym <= 1e-12 && min_second > 0.0,
        format!(
            "min G''+1 = {min_g:.3e} on {points} points; Xi max asymmetry {max_asym:.1e}, min second difference {min_second:.3e}"
        ),
    ))
}
