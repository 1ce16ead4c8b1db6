//! Exact probabilities for rational `p = a/b`.
//!
//! The DPs run modulo a batch of word-sized primes and the integer numerator
//! over `b^{C(n,2)}` is rebuilt by CRT.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular::{crt, primes_for_bits, MontField};
use super::{dp, ExactProb, RATIONAL_MAX_N};
use crate::combin::pairs;
use crate::error::{Error, Result};

fn split(n: usize, p: &BigRational) -> Result<(BigUint, BigUint)> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if n > RATIONAL_MAX_N {
        return Err(Error::SizeLimit(format!(
            "rational arithmetic supports n <= {RATIONAL_MAX_N}, got {n}; use float arithmetic"
        )));
    }
    if p.is_negative() || *p > BigRational::one() {
        return Err(Error::Domain(format!("edge probability {p} is outside [0, 1]")));
    }
    let a = p.numer().to_biguint().expect("nonnegative");
    let b = p.denom().to_biguint().expect("positive");
    Ok((a, b))
}

/// Runs `kernel(field, p, q)` modulo enough primes and rebuilds each output
/// as a numerator over `b^{C(n,2)}`. `extra` lists integers that must stay
/// invertible.
fn modular<K>(n: usize, a: &BigUint, b: &BigUint, extra: &[&BigUint], outputs: usize, kernel: K) -> Vec<ExactProb>
where
    K: Fn(&MontField, u64, u64) -> Vec<u64>,
{
    let exponent = pairs(n as u64);
    let den = num_traits::pow(b.clone(), exponent as usize);
    let bits = den.bits() + 1;
    let primes = primes_for_bits(bits, |ell| {
        (b % ell) != BigUint::zero() && extra.iter().all(|x| (*x % ell) != BigUint::zero())
    });
    let mut residues = vec![Vec::with_capacity(primes.len()); outputs];
    for &ell in &primes {
        let f = MontField::new(ell);
        let bm = f.from_big(b);
        let b_inv = f.inv(bm);
        let pm = f.mul(f.from_big(a), b_inv);
        let qm = f.sub(f.one(), pm);
        let scale = f.pow(bm, exponent);
        let vals = kernel(&f, pm, qm);
        debug_assert_eq!(vals.len(), outputs);
        for (slot, v) in residues.iter_mut().zip(vals) {
            slot.push(f.from_mont(f.mul(v, scale)));
        }
    }
    residues
        .iter()
        .map(|res| ExactProb::new(crt(&primes, res), den.clone()))
        .collect()
}

fn single<K>(n: usize, a: &BigUint, b: &BigUint, extra: &[&BigUint], kernel: K) -> ExactProb
where
    K: Fn(&MontField, u64, u64) -> u64,
{
    modular(n, a, b, extra, 1, |f, p, q| vec![kernel(f, p, q)])
        .pop()
        .expect("one output")
}

/// `P(connected)`.
pub fn connectivity(n: usize, p: &BigRational) -> Result<ExactProb> {
    let (a, b) = split(n, p)?;
    let d = &b - &a;
    if n == 1 || d.is_zero() {
        return Ok(ExactProb::new(BigUint::one(), BigUint::one()));
    }
    if a.is_zero() {
        return Ok(ExactProb::new(BigUint::zero(), BigUint::one()));
    }
    let exponent = pairs(n as u64);
    // the scaled kernel returns P q^{-C(n,2)}; multiply by q^{C(n,2)}
    Ok(single(n, &a, &b, &[&d], |f, _p, q| {
        let q_inv = f.inv(q);
        let scaled = dp::connectivity_scaled(f, &q_inv, n);
        f.mul(scaled, f.pow(q, exponent))
    }))
}

/// `P(no cycles, no component larger than r)`.
pub fn forest(n: usize, p: &BigRational, r: usize) -> Result<ExactProb> {
    let (a, b) = split(n, p)?;
    Ok(single(n, &a, &b, &[], |f, p, q| dp::forest(f, &p, &q, n, r)))
}

/// `P(no component larger than r)`.
pub fn small_components(n: usize, p: &BigRational, r: usize) -> Result<ExactProb> {
    let (a, b) = split(n, p)?;
    let r = r.min(n);
    Ok(single(n, &a, &b, &[], |f, _p, q| {
        let conn = dp::connectivity_table(f, &q, r);
        dp::small_components(f, &q, n, r, &conn)
    }))
}

/// `P(|V_r| = m)` for `m = 0..=n`.
pub fn macro_volume_law(n: usize, p: &BigRational, r: usize) -> Result<Vec<ExactProb>> {
    let (a, b) = split(n, p)?;
    Ok(modular(n, &a, &b, &[], n + 1, |f, _p, q| {
        let conn = dp::connectivity_table(f, &q, n);
        dp::macro_volume_law(f, &q, n, r, &conn)
    }))
}

/// The same DPs evaluated directly in big rationals; slow, used to check the
/// modular route.
pub mod direct {
    use super::*;
    use crate::exact::arith::Rationals;

    fn pq(p: &BigRational) -> (BigRational, BigRational) {
        (p.clone(), BigRational::one() - p)
    }

    pub fn connectivity(n: usize, p: &BigRational) -> BigRational {
        let (_, q) = pq(p);
        dp::connectivity_table(&Rationals, &q, n).swap_remove(n)
    }

    pub fn forest(n: usize, p: &BigRational, r: usize) -> BigRational {
        let (p, q) = pq(p);
        dp::forest(&Rationals, &p, &q, n, r)
    }

    pub fn small_components(n: usize, p: &BigRational, r: usize) -> BigRational {
        let (_, q) = pq(p);
        let conn = dp::connectivity_table(&Rationals, &q, r.min(n));
        dp::small_components(&Rationals, &q, n, r, &conn)
    }

    pub fn macro_volume_law(n: usize, p: &BigRational, r: usize) -> Vec<BigRational> {
        let (_, q) = pq(p);
        let conn = dp::connectivity_table(&Rationals, &q, n);
        dp::macro_volume_law(&Rationals, &q, n, r, &conn)
    }
}
