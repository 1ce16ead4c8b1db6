//! The forest partition sum
//! `Q_{n,k,r} = Σ Π_ℓ (a_ℓ/ℓ!)^{m_ℓ} / m_ℓ!` over multiplicities with
//! `Σ m_ℓ = k`, `Σ ℓ m_ℓ = n`, `ℓ ≤ r`, where `a_ℓ = ℓ^{ℓ-2}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combin::{cayley_exact, factorial_exact, LogFactorials};
use crate::prob::log_sum_exp;

fn infeasible(n: usize, k: usize, r: usize) -> bool {
    k > n || r.saturating_mul(k) < n || (k == 0 && n > 0) || (r == 0 && n > 0)
}

/// `ln Q_{n,k,r}`, or `-inf` when no partition exists.
///
/// Counts ordered `k`-tuples of tree sizes, `R(m, j) = Σ_ℓ (a_ℓ/ℓ!)
/// R(m-ℓ, j-1)`, then divides by `k!`.
pub fn exact_q(n: usize, k: usize, r: usize) -> f64 {
    if infeasible(n, k, r) {
        return f64::NEG_INFINITY;
    }
    let lf = LogFactorials::new(n.max(k));
    let r = r.min(n);
    let weight: Vec<f64> = (0..=r)
        .map(|l| match l {
            0 => f64::NEG_INFINITY,
            1 | 2 => -lf.get(l),
            _ => (l - 2) as f64 * (l as f64).ln() - lf.get(l),
        })
        .collect();
    let mut prev = vec![f64::NEG_INFINITY; n + 1];
    prev[0] = 0.0;
    let mut terms = Vec::with_capacity(r);
    for _ in 0..k {
        let mut next = vec![f64::NEG_INFINITY; n + 1];
        for (m, slot) in next.iter_mut().enumerate().skip(1) {
            terms.clear();
            for l in 1..=r.min(m) {
                if prev[m - l] > f64::NEG_INFINITY {
                    terms.push(weight[l] + prev[m - l]);
                }
            }
            *slot = log_sum_exp(&terms);
        }
        prev = next;
    }
    prev[n] - lf.get(k)
}

/// `Q_{n,k,r}` exactly, by the same ordered-tuple DP.
pub fn q_rational(n: usize, k: usize, r: usize) -> BigRational {
    if infeasible(n, k, r) {
        return BigRational::zero();
    }
    let r = r.min(n);
    let weight: Vec<BigRational> = (0..=r)
        .map(|l| {
            if l == 0 {
                BigRational::zero()
            } else {
                BigRational::new(
                    BigInt::from(cayley_exact(l as u64)),
                    BigInt::from(factorial_exact(l as u64)),
                )
            }
        })
        .collect();
    let mut prev = vec![BigRational::zero(); n + 1];
    prev[0] = BigRational::one();
    for _ in 0..k {
        let mut next = vec![BigRational::zero(); n + 1];
        for (m, slot) in next.iter_mut().enumerate().skip(1) {
            for l in 1..=r.min(m) {
                if !prev[m - l].is_zero() {
                    *slot += &weight[l] * &prev[m - l];
                }
            }
        }
        prev = next;
    }
    prev.swap_remove(n) / BigRational::from_integer(BigInt::from(factorial_exact(k as u64)))
}

/// `Q_{n,k,r}` by listing the multiplicity vectors directly.
pub fn q_by_partitions(n: usize, k: usize, r: usize) -> BigRational {
    fn go(
        l: usize,
        left_n: usize,
        left_k: usize,
        acc: BigRational,
        weight: &[BigRational],
        total: &mut BigRational,
    ) {
        if left_n == 0 && left_k == 0 {
            *total += acc;
            return;
        }
        if l == 0 || left_k == 0 || left_n == 0 {
            return;
        }
        let mut term = acc;
        let mut m = 0usize;
        loop {
            go(l - 1, left_n - m * l, left_k - m, term.clone(), weight, total);
            m += 1;
            if m * l > left_n || m > left_k {
                break;
            }
            term = term * &weight[l] / BigRational::from_integer(BigInt::from(m));
        }
    }
    let r = r.min(n);
    let weight: Vec<BigRational> = (0..=r)
        .map(|l| {
            BigRational::new(
                BigInt::from(cayley_exact(l.max(1) as u64)),
                BigInt::from(factorial_exact(l as u64)),
            )
        })
        .collect();
    let mut total = BigRational::zero();
    go(r, n, k, BigRational::one(), &weight, &mut total);
    total
}
