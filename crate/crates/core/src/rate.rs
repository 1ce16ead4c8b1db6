//! Closed-form rate functions for the giant component and the mean-field
//! fixed point.

use crate::error::{domain, Result};
use crate::prob::LogProb;

/// Mean degree `α ≥ 0` of `G(n, α/n)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return domain(format!("alpha must be finite and >= 0, got {value}"));
        }
        Ok(AlphaParam(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A vertex fraction in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Density(f64);

impl Density {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return domain(format!("density must lie in [0,1], got {value}"));
        }
        Ok(Density(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub(crate) fn clamped(value: f64) -> Self {
        Density(value.clamp(0.0, 1.0))
    }
}

/// One sample of the curve `ρ ↦ Φ(ρ, α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub rho: Density,
    pub phi: f64,
    /// True where the background term `Ψ(α(1−ρ))` is strictly negative.
    pub psi_active: bool,
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `ρ log ρ + (1−ρ) log(1−ρ)`, zero at both endpoints.
pub fn entropy(rho: Density) -> f64 {
    let r = rho.0;
    xlogx(r) + xlogx(1.0 - r)
}

/// `1 − e^{−α}`, the survival probability of a Poisson(α) branching process
/// started from one vertex and conditioned on nothing.
pub fn pi1(alpha: AlphaParam) -> f64 {
    -(-alpha.0).exp_m1()
}

fn pi1_raw(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// `min(log α − (α − 1/α)/2, 0)`, with `Ψ(0) = 0`.
pub fn psi(alpha: AlphaParam) -> f64 {
    psi_raw(alpha.0)
}

fn psi_raw(a: f64) -> f64 {
    if a <= 1.0 {
        // the bracket is nonnegative on (0, 1] and diverges at 0
        return 0.0;
    }
    (a.ln() - 0.5 * (a - 1.0 / a)).min(0.0)
}

/// The rate function `Φ(ρ, α)`.
///
/// Evaluated in the algebraically equal form
/// `ρ log(ρ/π₁(αρ)) + (1−ρ)(log(1−ρ) + αρ) − (1−ρ)Ψ(α(1−ρ))`, which avoids
/// the cancellation between the entropy and the two logarithms near the
/// minimizer. Tiny negative results from rounding are clamped to zero.
pub fn phi(rho: Density, alpha: AlphaParam) -> f64 {
    let (r, a) = (rho.0, alpha.0);
    if r == 0.0 {
        return -psi_raw(a);
    }
    if a == 0.0 {
        return f64::INFINITY;
    }
    let giant = r * (r / pi1_raw(a * r)).ln();
    let rest = if r == 1.0 {
        0.0
    } else {
        (1.0 - r) * ((1.0 - r).ln() + a * r)
    };
    let background = -(1.0 - r) * psi_raw(a * (1.0 - r));
    (giant + rest + background).max(0.0)
}

pub fn rate_point(rho: Density, alpha: AlphaParam) -> RatePoint {
    RatePoint {
        rho,
        phi: phi(rho, alpha),
        psi_active: psi_raw(alpha.0 * (1.0 - rho.0)) < 0.0,
    }
}

const FIXED_POINT_TOL: f64 = 1e-12;
const FIXED_POINT_MAX_ITERS: usize = 100_000_000;

/// Maximal solution of `ρ = 1 − e^{−αρ}`.
///
/// Monotone iteration from `ρ₀ = 1` (the iterates decrease onto the largest
/// fixed point), stopped once successive iterates differ by at most `1e-12`,
/// then polished with Newton steps, which stay above the root because the
/// residual is convex.
pub fn mean_field_maximal(alpha: AlphaParam) -> Density {
    let a = alpha.0;
    if a <= 1.0 {
        return Density(0.0);
    }
    let mut rho = 1.0f64;
    for _ in 0..FIXED_POINT_MAX_ITERS {
        let next = pi1_raw(a * rho);
        let step = rho - next;
        rho = next;
        if step.abs() <= FIXED_POINT_TOL {
            break;
        }
    }
    for _ in 0..4 {
        let h = rho - pi1_raw(a * rho);
        let dh = 1.0 - a * (-a * rho).exp();
        if dh <= 0.0 {
            break;
        }
        let next = rho - h / dh;
        if !(next > 0.0 && next <= rho) {
            break;
        }
        rho = next;
    }
    Density(rho)
}

const GRID_STEP: f64 = 1e-3;
const GOLDEN_TOL: f64 = 1e-10;

/// Global minimizer of `ρ ↦ Φ(ρ, α)` on `[0, 1]` by grid scan plus
/// golden-section refinement. Returns `(argmin, min)`.
pub fn minimize_phi(alpha: AlphaParam) -> (Density, f64) {
    let steps = (1.0 / GRID_STEP).round() as usize;
    let f = |r: f64| phi(Density::clamped(r), alpha);
    let mut best = 0usize;
    let mut best_val = f(0.0);
    for i in 1..=steps {
        let v = f(i as f64 / steps as f64);
        if v < best_val {
            best = i;
            best_val = v;
        }
    }
    let lo = best.saturating_sub(1) as f64 / steps as f64;
    let hi = (best + 1).min(steps) as f64 / steps as f64;
    let (x, fx) = golden_section(f, lo, hi, GOLDEN_TOL);
    let mut candidates = [(lo, f(lo)), (hi, f(hi)), (x, fx)];
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = candidates[0];
    (Density::clamped(x), fx.max(0.0))
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `Ξ(ρ) = −S(ρ) + ρ log π₁(αρ) + (1−ρ) log π₁(α(1−ρ)) − αρ(1−ρ)`, the
/// exponent bounding the cost of splitting a connected graph into two
/// macroscopic pieces.
pub fn xi(rho: Density, alpha: AlphaParam) -> Result<f64> {
    let (r, a) = (rho.0, alpha.0);
    if a <= 0.0 {
        return domain("xi requires alpha > 0");
    }
    let part = |w: f64| if w == 0.0 { 0.0 } else { w * pi1_raw(a * w).ln() };
    Ok(-entropy(rho) + part(r) + part(1.0 - r) - a * r * (1.0 - r))
}

/// `G''(η) + 1` for `G(η) = η log(π₁(η)/η)`, via
/// `(1/q)(q' − q)(q e^{−η} − 1)` with `q(η) = η/(1 − e^{−η})`.
pub fn g_second_plus_one(eta: f64) -> Result<f64> {
    if !(eta > 0.0) || !eta.is_finite() {
        return domain(format!("eta must be finite and > 0, got {eta}"));
    }
    let one_minus = -(-eta).exp_m1();
    let q = eta / one_minus;
    let dq = (one_minus - eta * (-eta).exp()) / (one_minus * one_minus);
    let tail = eta / eta.exp_m1() - 1.0;
    Ok((dq - q) * tail / q)
}

/// `G(η) = η log(π₁(η)/η)`.
pub fn g_function(eta: f64) -> f64 {
    eta * (pi1_raw(eta) / eta).ln()
}

/// Log-space bracket `(lower, upper)` on the probability that `G(n, α/n)` is
/// connected: `upper = (1 − (1 − α/n)^{n−1})^{n−1}` and `lower = upper / n`.
pub fn connectivity_bounds(n: u64, alpha: AlphaParam) -> Result<(LogProb, LogProb)> {
    if n == 0 {
        return domain("n must be >= 1");
    }
    let a = alpha.0;
    if a > n as f64 {
        return domain(format!("alpha = {a} exceeds n = {n}: edge probability above 1"));
    }
    if n == 1 {
        return Ok((LogProb::ONE, LogProb::ONE));
    }
    let m = (n - 1) as f64;
    let log_isolated = m * (-a / n as f64).ln_1p();
    let log_out = (-log_isolated.exp_m1()).ln();
    let upper = m * log_out;
    let lower = upper - (n as f64).ln();
    Ok((LogProb::from_rounded(lower), LogProb::from_rounded(upper)))
}

/// `lim_n (1 − (1 − α/n)^{n−1})^{n−1} / (1 − e^{−α})^{n−1}`, which equals
/// `exp(−(1 − α/2) α e^{−α} / (1 − e^{−α}))`.
pub fn connectivity_limit_constant(alpha: AlphaParam) -> Result<f64> {
    let a = alpha.0;
    if a <= 0.0 {
        return domain("limit constant requires alpha > 0");
    }
    Ok((-(1.0 - a / 2.0) * a / a.exp_m1()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }
    fn de(r: f64) -> Density {
        Density::new(r).unwrap()
    }

    // Reference digits below come from 50-digit mpmath evaluations.
    const S_QUARTER: f64 = -0.562_335_144_618_808_4;
    const PI1_TWO: f64 = 0.864_664_716_763_387_3;
    const PSI_TWO: f64 = -0.056_852_819_440_054_69;
    const RHO_STAR_TWO: f64 = 0.796_812_130_020_020_1;
    const RHO_STAR_1_6: f64 = 0.641_981_317_341_699_8;
    const XI_HALF_ONE: f64 = -0.489_604_949_007_243_3;

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(de(0.0)), 0.0);
        assert_eq!(entropy(de(1.0)), 0.0);
        assert!((entropy(de(0.5)) + 2f64.ln()).abs() < 1e-15);
        assert!((entropy(de(0.25)) - S_QUARTER).abs() < 1e-15);
        assert!(Density::new(1.5).is_err());
        assert!(AlphaParam::new(-1.0).is_err());
    }

    #[test]
    fn pi1_and_psi_values() {
        assert_eq!(pi1(al(0.0)), 0.0);
        assert!((pi1(al(2f64.ln())) - 0.5).abs() < 1e-15);
        assert!((pi1(al(2.0)) - PI1_TWO).abs() < 1e-15);
        assert_eq!(psi(al(1.0)), 0.0);
        assert_eq!(psi(al(0.5)), 0.0);
        assert_eq!(psi(al(0.0)), 0.0);
        assert!((psi(al(2.0)) - PSI_TWO).abs() < 1e-15);
    }

    #[test]
    fn phi_boundary_values() {
        assert!((phi(de(1.0), al(2.0)) + PI1_TWO.ln()).abs() < 1e-14);
        assert!((phi(de(0.0), al(2.0)) + PSI_TWO).abs() < 1e-15);
        assert_eq!(phi(de(0.0), al(0.0)), 0.0);
        assert_eq!(phi(de(0.3), al(0.0)), f64::INFINITY);
    }

    #[test]
    fn phi_matches_textbook_form_in_interior() {
        for &(r, a) in &[(0.2, 0.7), (0.5, 1.6), (0.9, 2.4), (0.05, 3.0)] {
            let p = pi1(al(a * r));
            let direct = entropy(de(r)) - r * p.ln() - (1.0 - r) * (1.0 - p).ln()
                - (1.0 - r) * psi(al(a * (1.0 - r)));
            assert!((phi(de(r), al(a)) - direct).abs() < 1e-14, "{r} {a}");
        }
    }

    #[test]
    fn phi_vanishes_at_mean_field_solution() {
        for &a in &[0.5, 1.5, 2.4] {
            let r = mean_field_maximal(al(a));
            assert!(phi(r, al(a)) < 1e-12, "alpha {a}");
        }
    }

    #[test]
    fn mean_field_values() {
        assert_eq!(mean_field_maximal(al(0.5)).value(), 0.0);
        assert_eq!(mean_field_maximal(al(1.0)).value(), 0.0);
        assert!((mean_field_maximal(al(2.0)).value() - RHO_STAR_TWO).abs() < 1e-12);
        assert!((mean_field_maximal(al(1.6)).value() - RHO_STAR_1_6).abs() < 1e-12);
    }

    #[test]
    fn minimizer_values() {
        let (r, v) = minimize_phi(al(0.8));
        assert!(r.value() < 1e-9 && v == 0.0);
        let (r, v) = minimize_phi(al(2.0));
        assert!((r.value() - RHO_STAR_TWO).abs() < 1e-6 && v <= 1e-8);
        let (r, v) = minimize_phi(al(1.6));
        assert!((r.value() - RHO_STAR_1_6).abs() < 1e-6 && v <= 1e-8);
    }

    #[test]
    fn xi_values() {
        assert!((xi(de(0.0), al(2.0)).unwrap() - PI1_TWO.ln()).abs() < 1e-15);
        let l = xi(de(0.3), al(2.0)).unwrap();
        let r = xi(de(0.7), al(2.0)).unwrap();
        assert!((l - r).abs() < 1e-15);
        assert!((xi(de(0.5), al(1.0)).unwrap() - XI_HALF_ONE).abs() < 1e-15);
        assert!(xi(de(0.5), al(0.0)).is_err());
    }

    #[test]
    fn g_second_matches_high_precision() {
        let refs = [
            (1e-3, 2.499_999_930_555_557_9e-4),
            (0.1, 0.024_993_057_869_626_55),
            (1.0, 0.243_279_819_530_860_5),
            (5.0, 0.779_418_945_411_648_2),
            (50.0, 0.98),
        ];
        for (eta, want) in refs {
            let got = g_second_plus_one(eta).unwrap();
            assert!(((got - want) / want).abs() < 1e-11, "{eta}: {got} vs {want}");
        }
        assert!(g_second_plus_one(0.0).is_err());
        assert!(g_second_plus_one(-1.0).is_err());
    }

    #[test]
    fn connectivity_bound_values() {
        let (lo, hi) = connectivity_bounds(1, al(0.7)).unwrap();
        assert_eq!((lo.ln(), hi.ln()), (0.0, 0.0));
        let (lo, hi) = connectivity_bounds(2, al(1.0)).unwrap();
        assert!((hi.prob() - 0.5).abs() < 1e-15);
        assert!((lo.prob() - 0.25).abs() < 1e-15);
        assert!(connectivity_bounds(3, al(3.5)).is_err());
        let (_, hi) = connectivity_bounds(4, al(4.0)).unwrap();
        assert_eq!(hi.ln(), 0.0);
        let (lo, hi) = connectivity_bounds(4, al(0.0)).unwrap();
        assert!(lo.is_zero() && hi.is_zero());
    }

    #[test]
    fn limit_constant_values() {
        assert!((connectivity_limit_constant(al(2.0)).unwrap() - 1.0).abs() < 1e-15);
        let want = 0.747_524_384_058_972_97;
        assert!((connectivity_limit_constant(al(1.0)).unwrap() - want).abs() < 1e-14);
        assert!(connectivity_limit_constant(al(0.0)).is_err());
    }

    #[test]
    fn limit_constant_matches_finite_ratio() {
        let a = 3.0;
        let n = 1_000_000u64;
        let (_, hi) = connectivity_bounds(n, al(a)).unwrap();
        let log_ratio = hi.ln() - (n - 1) as f64 * pi1(al(a)).ln();
        let c = connectivity_limit_constant(al(a)).unwrap();
        assert!((log_ratio.exp() - c).abs() < 1e-4);
    }
}
