//! Labeled-tree generating polynomial and the saddle-point system that
//! governs the probability of a forest with bounded tree sizes.
//!
//! Everything here is a real optimization: coefficient extraction is bounded
//! through `inf_{s>0} F_r(s)^k / s^n` rather than by contour quadrature.

use crate::combin::LogFactorials;
use crate::error::{domain, Error, Result};
use crate::prob::log_sum_exp;
use crate::rate::{AlphaParam, Density};

/// `a_ℓ = ℓ^{ℓ−2}`, the number of labeled trees on `ℓ` vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeCount {
    pub ell: u64,
    pub log_count: f64,
}

/// Largest `ℓ` whose tree count is also returned as an exact integer.
pub const EXACT_TREE_COUNT_MAX: u64 = 20;

impl TreeCount {
    pub fn new(ell: u64) -> Result<Self> {
        Ok(TreeCount { ell, log_count: cayley_log(ell)? })
    }

    /// The exact count for `ℓ ≤ 20` (fits in 128 bits), `None` beyond.
    pub fn exact(&self) -> Option<u128> {
        if self.ell > EXACT_TREE_COUNT_MAX {
            return None;
        }
        if self.ell <= 2 {
            return Some(1);
        }
        Some((self.ell as u128).pow(self.ell as u32 - 2))
    }
}

/// `log a_ℓ = (ℓ − 2) log ℓ`.
pub fn cayley_log(ell: u64) -> Result<f64> {
    if ell < 1 {
        return domain("tree size must be >= 1");
    }
    Ok((ell as f64 - 2.0) * (ell as f64).ln())
}

/// `F_r(s) = Σ_{ℓ=1}^{r} a_ℓ s^ℓ / ℓ!` with its coefficients held in log
/// space so that large `r` neither overflows nor loses the small terms.
#[derive(Debug, Clone)]
pub struct TreePolynomial {
    r: usize,
    // log(a_ℓ / ℓ!) for ℓ = 1..=r
    log_coef: Vec<f64>,
}

impl TreePolynomial {
    pub fn new(r: usize) -> Result<Self> {
        if r < 1 {
            return domain("cutoff r must be >= 1");
        }
        let lf = LogFactorials::new(r);
        let log_coef = (1..=r)
            .map(|l| (l as f64 - 2.0) * (l as f64).ln() - lf.get(l))
            .collect();
        Ok(TreePolynomial { r, log_coef })
    }

    pub fn cutoff(&self) -> usize {
        self.r
    }

    fn log_terms(&self, ln_s: f64, extra: impl Fn(usize) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .log_coef
            .iter()
            .enumerate()
            .map(|(i, c)| c + (i + 1) as f64 * ln_s + extra(i + 1))
            .collect();
        log_sum_exp(&terms)
    }

    /// `log F_r(s)` given `log s`.
    pub fn ln_f(&self, ln_s: f64) -> f64 {
        self.log_terms(ln_s, |_| 0.0)
    }

    /// `log(s F_r'(s)) = log Σ ℓ a_ℓ s^ℓ / ℓ!` given `log s`.
    pub fn ln_sfp(&self, ln_s: f64) -> f64 {
        self.log_terms(ln_s, |l| (l as f64).ln())
    }

    /// Mean of the size-biased law `P(X = ℓ) ∝ a_ℓ s^ℓ / ℓ!`, i.e.
    /// `s F_r'(s) / F_r(s)`. Strictly increasing in `s` from 1 to `r`.
    pub fn tilted_mean(&self, ln_s: f64) -> f64 {
        (self.ln_sfp(ln_s) - self.ln_f(ln_s)).exp()
    }

    /// `(F_r(s), s F_r'(s))`; overflow shows up as `+inf`.
    pub fn eval(&self, s: f64) -> (f64, f64) {
        let ln_s = s.ln();
        (self.ln_f(ln_s).exp(), self.ln_sfp(ln_s).exp())
    }
}

/// `(F_r(s), s F_r'(s))`.
#[allow(non_snake_case)]
pub fn eval_F(s: f64, r: usize) -> Result<(f64, f64)> {
    if !(s > 0.0) || !s.is_finite() {
        return domain(format!("s must be finite and > 0, got {s}"));
    }
    Ok(TreePolynomial::new(r)?.eval(s))
}

const E_INV: f64 = 0.367_879_441_171_442_33;

/// The solution `W ∈ [0, 1]` of `W e^{−W} = s` for `s ∈ [0, 1/e]`, the
/// `r → ∞` limit of `s F_r'(s)`.
pub fn lambert_w_tree(s: f64) -> Result<f64> {
    if !(0.0..=E_INV).contains(&s) {
        return domain(format!("s must lie in [0, 1/e], got {s}"));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid * (-mid).exp() < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `Θ_r(s, ρ) = −ρ log α − ρ log ρ + ρ + ρ log F_r(s) − log s`.
pub fn theta(s: f64, rho: Density, alpha: AlphaParam, r: usize) -> Result<f64> {
    let (rho, a) = (rho.value(), alpha.value());
    if !(s > 0.0) {
        return domain("s must be > 0");
    }
    if rho <= 0.0 {
        return domain("rho must be > 0");
    }
    if a <= 0.0 {
        return domain("alpha must be > 0");
    }
    let poly = TreePolynomial::new(r)?;
    Ok(theta_with(&poly, s.ln(), rho, a))
}

fn theta_with(poly: &TreePolynomial, ln_s: f64, rho: f64, a: f64) -> f64 {
    -rho * a.ln() - rho * rho.ln() + rho + rho * poly.ln_f(ln_s) - ln_s
}

/// Saddle point `(s_r, ρ_r)` of `sup_ρ inf_s Θ_r(s, ρ)` and its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleSolution {
    pub s_r: f64,
    pub rho_r: Density,
    pub theta: f64,
    pub r: usize,
    pub alpha: AlphaParam,
}

impl SaddleSolution {
    /// `(|F_r(s_r) − α ρ_r|, |s_r F_r'(s_r) − α|)`.
    pub fn residuals(&self) -> (f64, f64) {
        let poly = TreePolynomial::new(self.r).expect("r validated at construction");
        let (f, sfp) = poly.eval(self.s_r);
        let a = self.alpha.value();
        ((f - a * self.rho_r.value()).abs(), (sfp - a).abs())
    }

    /// `α e^{−1−α/2+Θ_r}`, the limit of `P(L ∩ B_r)^{1/n}`.
    pub fn proxy_rate(&self) -> f64 {
        let a = self.alpha.value();
        a * (-1.0 - a / 2.0 + self.theta).exp()
    }
}

/// Finds `s` with `g(log s) = 0` for an increasing `g`, bracketing by
/// doubling and halving `s` away from `1/e`.
fn solve_increasing(g: impl Fn(f64) -> f64, what: &'static str) -> Result<f64> {
    let start = -1.0f64;
    let (mut lo, mut hi) = (start, start);
    let mut tries = 0;
    while g(lo) > 0.0 {
        lo -= std::f64::consts::LN_2;
        tries += 1;
        if tries > 2000 {
            return Err(Error::Bracket { what });
        }
    }
    while g(hi) < 0.0 {
        hi += std::f64::consts::LN_2;
        tries += 1;
        if tries > 2000 {
            return Err(Error::Bracket { what });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick the endpoint with the smaller residual
    Ok(if g(lo).abs() <= g(hi).abs() { lo } else { hi })
}

/// Solves `F_r(s) = α ρ`, `s F_r'(s) = α`.
pub fn solve_saddle(alpha: AlphaParam, r: usize) -> Result<SaddleSolution> {
    let a = alpha.value();
    if a <= 0.0 {
        return domain("saddle requires alpha > 0");
    }
    if r < 2 {
        return domain("saddle requires r >= 2");
    }
    let poly = TreePolynomial::new(r)?;
    let ln_a = a.ln();
    let ln_s = solve_increasing(|x| poly.ln_sfp(x) - ln_a, "s F_r'(s) = alpha")?;
    let s_r = ln_s.exp();
    let rho = poly.ln_f(ln_s).exp() / a;
    if !(rho > 1.0 / r as f64 && rho < 1.0) {
        return domain(format!("saddle density {rho} left (1/r, 1) for alpha={a}, r={r}"));
    }
    Ok(SaddleSolution {
        s_r,
        rho_r: Density::new(rho)?,
        theta: rho - ln_s,
        r,
        alpha,
    })
}

/// `inf_{s>0} [ρ log F_r(s) − log s]` for `ρ ∈ [1/r, 1]`; the boundary values
/// are the `s → ∞` and `s → 0` limits.
pub fn inf_over_s(poly: &TreePolynomial, rho: f64) -> Result<f64> {
    let r = poly.cutoff() as f64;
    if !(rho >= 1.0 / r - 1e-15 && rho <= 1.0 + 1e-15) {
        return domain(format!("rho = {rho} outside [1/r, 1]"));
    }
    if (rho - 1.0).abs() <= 1e-15 {
        // F_r(s)/s → a_1 = 1 as s → 0
        return Ok(0.0);
    }
    if (rho * r - 1.0).abs() <= 1e-12 {
        // F_r(s) ~ (a_r/r!) s^r as s → ∞
        return Ok(rho * poly.log_coef[poly.r - 1]);
    }
    let target = (1.0 / rho).ln();
    let ln_s = solve_increasing(|x| poly.tilted_mean(x).ln() - target, "tilted mean")?;
    Ok(rho * poly.ln_f(ln_s) - ln_s)
}

/// `inf_{s>0} Θ_r(s, ρ)`.
pub fn theta_inf_over_s(rho: Density, alpha: AlphaParam, poly: &TreePolynomial) -> Result<f64> {
    let (rho, a) = (rho.value(), alpha.value());
    Ok(-rho * a.ln() - rho * rho.ln() + rho + inf_over_s(poly, rho)?)
}

/// `log inf_{s>0} F_r(s)^k / s^n`, the exponent of the coefficient bound
/// `k! Q_{n,k,r} ≤ inf_s F_r(s)^k / s^n`. `None` when no partition of `n`
/// into `k` parts of size at most `r` exists.
pub fn log_partition_bound(n: u64, k: u64, r: usize) -> Result<Option<f64>> {
    if k == 0 || k > n || (r as u64) * k < n {
        return Ok(None);
    }
    let poly = TreePolynomial::new(r)?;
    Ok(Some(n as f64 * inf_over_s(&poly, k as f64 / n as f64)?))
}

/// `r → ∞` limits of the saddle point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleLimits {
    pub s: f64,
    pub rho: f64,
    pub theta: f64,
    /// limit of `F_r(s_r)`
    pub f: f64,
}

pub fn saddle_limits(alpha: AlphaParam) -> Result<SaddleLimits> {
    let a = alpha.value();
    if a <= 0.0 {
        return domain("limits require alpha > 0");
    }
    Ok(if a <= 1.0 {
        SaddleLimits {
            s: a * (-a).exp(),
            rho: 1.0 - a / 2.0,
            theta: 1.0 + a / 2.0 - a.ln(),
            f: a * (1.0 - a / 2.0),
        }
    } else {
        SaddleLimits {
            s: E_INV,
            rho: 1.0 / (2.0 * a),
            theta: 1.0 + 1.0 / (2.0 * a),
            f: 0.5,
        }
    })
}

/// `lim_n P(G(n, α/n) is a forest)^{1/n}`: `α e^{−α/2 + 1/(2α)}` for `α > 1`,
/// otherwise 1.
pub fn trees_rate(alpha: AlphaParam) -> f64 {
    let a = alpha.value();
    if a > 1.0 {
        a * (-a / 2.0 + 1.0 / (2.0 * a)).exp()
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rate::psi;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn al(a: f64) -> AlphaParam {
        AlphaParam::new(a).unwrap()
    }

    /// Spanning trees of K_ℓ by brute force over (ℓ−1)-edge subsets.
    fn spanning_trees_brute(ell: usize) -> u64 {
        let edges: Vec<(usize, usize)> =
            (0..ell).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let m = edges.len();
        let mut count = 0;
        for mask in 0u32..(1u32 << m) {
            if mask.count_ones() as usize != ell - 1 {
                continue;
            }
            let mut parent: Vec<usize> = (0..ell).collect();
            fn root(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            let mut acyclic = true;
            for (e, &(i, j)) in edges.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                    if ri == rj {
                        acyclic = false;
                        break;
                    }
                    parent[ri] = rj;
                }
            }
            if acyclic {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn cayley_matches_spanning_tree_enumeration() {
        assert_eq!(cayley_log(1).unwrap(), 0.0);
        assert!((cayley_log(3).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((cayley_log(7).unwrap() - 16807f64.ln()).abs() < 1e-12);
        assert!(cayley_log(0).is_err());
        for ell in 1..=7u64 {
            let t = TreeCount::new(ell).unwrap();
            assert_eq!(t.exact().unwrap() as u64, spanning_trees_brute(ell as usize));
        }
        assert_eq!(TreeCount::new(20).unwrap().exact(), Some(20u128.pow(18)));
        assert_eq!(TreeCount::new(21).unwrap().exact(), None);
    }

    fn exact_f(s: &BigRational, r: u64) -> (BigRational, BigRational) {
        let mut f = BigRational::from_integer(0.into());
        let mut sfp = f.clone();
        let mut pow = BigRational::from_integer(1.into());
        let mut fact = BigInt::from(1);
        for l in 1..=r {
            pow = &pow * s;
            fact *= l;
            let a = BigInt::from(crate::combin::cayley_exact(l));
            let term = &pow * BigRational::new(a, fact.clone());
            sfp += &term * BigRational::from_integer(BigInt::from(l));
            f += term;
        }
        (f, sfp)
    }

    #[test]
    fn eval_f_small_and_exact() {
        let (f, sfp) = eval_F(1.0, 2).unwrap();
        assert!((f - 1.5).abs() < 1e-15 && (sfp - 2.0).abs() < 1e-15);
        for r in 1..=10u64 {
            for &(num, den) in &[(1i64, 5i64), (1, 3), (7, 20), (3, 2)] {
                let s = BigRational::new(num.into(), den.into());
                let (fe, se) = exact_f(&s, r);
                let (f, sfp) = eval_F(num as f64 / den as f64, r as usize).unwrap();
                let (fe, se) = (fe.to_f64().unwrap(), se.to_f64().unwrap());
                assert!(((f - fe) / fe).abs() < 1e-12, "F r={r}");
                assert!(((sfp - se) / se).abs() < 1e-12, "sF' r={r}");
            }
        }
        assert!(eval_F(0.0, 3).is_err());
        assert!(eval_F(0.5, 0).is_err());
    }

    #[test]
    fn eval_f_at_inverse_e_approaches_one() {
        let (_, sfp) = eval_F(E_INV, 500).unwrap();
        assert!((sfp - 1.0).abs() < 0.05, "{sfp}");
        let (f, sfp) = eval_F(50.0, 400).unwrap();
        assert!(f.is_infinite() && sfp.is_infinite());
    }

    #[test]
    fn lambert_w_values() {
        assert_eq!(lambert_w_tree(0.0).unwrap(), 0.0);
        assert!((lambert_w_tree(E_INV).unwrap() - 1.0).abs() < 1e-7);
        assert!((lambert_w_tree(0.5 * (-0.5f64).exp()).unwrap() - 0.5).abs() < 1e-13);
        assert!(lambert_w_tree(0.4).is_err());
        assert!(lambert_w_tree(-0.1).is_err());
        for i in 0..=200 {
            let s = E_INV * i as f64 / 200.0;
            let w = lambert_w_tree(s).unwrap();
            assert!((w * (-w).exp() - s).abs() < 1e-13);
        }
    }

    #[test]
    fn theta_simple_value() {
        let v = theta(1.0, Density::new(1.0).unwrap(), al(std::f64::consts::E), 1).unwrap();
        assert!(v.abs() < 1e-15);
        assert!(theta(1.0, Density::new(0.0).unwrap(), al(1.0), 3).is_err());
    }

    #[test]
    fn theta_matches_exact_rational_evaluation() {
        // Θ is linear in log F; check the F part exactly and the rest directly.
        let (s, rho, a, r) = (0.3f64, 0.45f64, 1.7f64, 6u64);
        let (fe, _) = exact_f(&BigRational::new(3.into(), 10.into()), r);
        let fe = fe.to_f64().unwrap();
        let want = -rho * a.ln() - rho * rho.ln() + rho + rho * fe.ln() - s.ln();
        let got = theta(s, Density::new(rho).unwrap(), al(a), r as usize).unwrap();
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn saddle_closed_form_r2() {
        let sol = solve_saddle(al(1.0), 2).unwrap();
        let want = (5f64.sqrt() - 1.0) / 2.0;
        assert!((sol.s_r - want).abs() < 1e-13);
        let f = want + want * want / 2.0;
        assert!((sol.rho_r.value() - f).abs() < 1e-13);
    }

    #[test]
    fn saddle_limits_at_large_r() {
        let sol = solve_saddle(al(2.0), 2000).unwrap();
        assert!((sol.s_r - E_INV).abs() < 0.01);
        assert!((sol.rho_r.value() - 0.25).abs() < 0.01);
        assert!((sol.theta - 1.25).abs() < 0.01);
        let sol = solve_saddle(al(0.5), 2000).unwrap();
        assert!((sol.s_r - 0.5 * (-0.5f64).exp()).abs() < 0.01);
        assert!((sol.rho_r.value() - 0.75).abs() < 0.01);
        assert!((sol.theta - 1.943_147).abs() < 0.01);
    }

    #[test]
    fn saddle_residuals_are_tiny() {
        for &a in &[0.3, 0.5, 1.0, 1.5, 2.0, 4.0] {
            for &r in &[2usize, 3, 10, 100, 640] {
                let sol = solve_saddle(al(a), r).unwrap();
                let (rf, rs) = sol.residuals();
                assert!(rf <= 1e-10 && rs <= 1e-10, "a={a} r={r}: {rf} {rs}");
            }
        }
        assert!(solve_saddle(al(0.0), 5).is_err());
        assert!(solve_saddle(al(1.0), 1).is_err());
    }

    #[test]
    fn sfp_strictly_increasing() {
        for &r in &[2usize, 5, 50, 500] {
            let poly = TreePolynomial::new(r).unwrap();
            let mut prev = f64::NEG_INFINITY;
            for i in 0..400 {
                let ln_s = -8.0 + i as f64 * 0.025;
                let v = poly.ln_sfp(ln_s);
                assert!(v > prev);
                prev = v;
            }
        }
    }

    #[test]
    fn trees_rate_values() {
        assert_eq!(trees_rate(al(0.7)), 1.0);
        assert!((trees_rate(al(2.0)) - 0.944_733_105_482_029_4).abs() < 1e-15);
        for &a in &[1.2f64, 2.0, 3.7] {
            let th = 1.0 + 1.0 / (2.0 * a);
            let via_theta = a * (-1.0 - a / 2.0 + th).exp();
            assert!((trees_rate(al(a)) - via_theta).abs() < 1e-14);
            assert!((trees_rate(al(a)) - psi(al(a)).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn theta_convergence_envelope() {
        for &a in &[0.5, 2.0] {
            let lim = saddle_limits(al(a)).unwrap().theta;
            let errs: Vec<f64> = [10usize, 40, 160, 640]
                .iter()
                .map(|&r| (solve_saddle(al(a), r).unwrap().theta - lim).abs())
                .collect();
            let c = errs[0] * 10f64.sqrt();
            for (w, &r) in errs.windows(2).zip(&[40usize, 160, 640]) {
                // below 1e-12 the error is rounding noise
                assert!(w[1] < w[0] || w[0] < 1e-12, "alpha {a}: {errs:?}");
                assert!(w[1] <= c / (r as f64).sqrt() + 1e-12, "alpha {a}: {errs:?}");
            }
        }
    }

    #[test]
    fn argmax_over_rho_matches_saddle() {
        for &(a, r) in &[(0.5, 20usize), (2.0, 20), (1.0, 8)] {
            let poly = TreePolynomial::new(r).unwrap();
            let sol = solve_saddle(al(a), r).unwrap();
            let lo = 1.0 / r as f64;
            let steps = 2000;
            let h = (1.0 - lo) / steps as f64;
            let mut best = (f64::NEG_INFINITY, 0.0);
            for i in 1..steps {
                let rho = lo + i as f64 * h;
                let v = theta_inf_over_s(Density::new(rho).unwrap(), al(a), &poly).unwrap();
                if v > best.0 {
                    best = (v, rho);
                }
            }
            assert!((best.1 - sol.rho_r.value()).abs() <= h, "a={a} r={r}");
            assert!((best.0 - sol.theta).abs() < 1e-5);
        }
    }
}
