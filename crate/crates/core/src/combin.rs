//! Small combinatorial helpers shared by the exact and saddle modules.

use num_bigint::BigUint;
use num_traits::One;

/// Table of `ln k!` for `k = 0..=n`, accumulated as a running sum of `ln k`.
#[derive(Debug, Clone)]
pub struct LogFactorials(Vec<f64>);

impl LogFactorials {
    pub fn new(n: usize) -> Self {
        let mut t = Vec::with_capacity(n + 1);
        t.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=n {
            acc += (k as f64).ln();
            t.push(acc);
        }
        LogFactorials(t)
    }

    pub fn get(&self, k: usize) -> f64 {
        self.0[k]
    }

    pub fn ln_binom(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return f64::NEG_INFINITY;
        }
        self.0[n] - self.0[k] - self.0[n - k]
    }
}

/// `n choose 2`.
pub fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Number of labeled trees on `ell` vertices, `ell^(ell-2)`, as an exact
/// integer (`a_1 = a_2 = 1`).
pub fn cayley_exact(ell: u64) -> BigUint {
    if ell <= 2 {
        return BigUint::one();
    }
    BigUint::from(ell).pow((ell - 2) as u32)
}

/// Exact binomial coefficient.
pub fn binom_exact(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact factorial.
pub fn factorial_exact(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Natural log of a big unsigned integer; `-inf` for zero.
pub fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top: BigUint = x >> shift;
    let top = top.iter_u64_digits().next().unwrap_or(0) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binom_exact(10, 3), BigUint::from(120u32));
        assert_eq!(binom_exact(3, 5), BigUint::default());
        assert_eq!(factorial_exact(6), BigUint::from(720u32));
        let lf = LogFactorials::new(30);
        assert!((lf.ln_binom(30, 15) - 155117520f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn big_ln_matches_f64() {
        let x = BigUint::from(123_456_789_012_345u64);
        assert!((big_ln(&x) - 123_456_789_012_345f64.ln()).abs() < 1e-12);
        let y = BigUint::from(3u32).pow(5000);
        assert!((big_ln(&y) - 5000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(big_ln(&BigUint::default()), f64::NEG_INFINITY);
    }

    #[test]
    fn cayley_small_values() {
        assert_eq!(cayley_exact(1), BigUint::one());
        assert_eq!(cayley_exact(3), BigUint::from(3u32));
        assert_eq!(cayley_exact(7), BigUint::from(16807u32));
    }
}
