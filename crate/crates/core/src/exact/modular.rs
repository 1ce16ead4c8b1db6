//! Word-sized prime fields in Montgomery form and Chinese-remainder
//! reconstruction.
//!
//! Every event probability of `G(n, a/b)` is `N / b^{C(n,2)}` with
//! `0 ≤ N ≤ b^{C(n,2)}`, so running a dynamic program modulo enough primes and
//! reconstructing `N` gives the exact rational without ever forming huge
//! intermediate fractions.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Moduli are kept below `2^56` so that up to 255 products of reduced values
/// can be summed in a `u128` and still be a valid Montgomery reduction input.
pub const PRIME_BITS: u32 = 56;
const LAZY_CHUNK: usize = 255;

/// `Z/pZ` for an odd prime `p < 2^56`, values stored in Montgomery form.
#[derive(Debug, Clone, Copy)]
pub struct MontField {
    p: u64,
    // -p^{-1} mod 2^64
    neg_inv: u64,
    // 2^128 mod p
    r2: u64,
}

impl MontField {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1u64 << PRIME_BITS) && p > 2);
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        MontField { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let t = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if t >= self.p {
            t - self.p
        } else {
            t
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    /// Montgomery form of an arbitrary `u64`.
    pub fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    pub fn from_mont(&self, x: u64) -> u64 {
        self.redc(x as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `x` must be nonzero.
    pub fn inv(&self, x: u64) -> u64 {
        self.pow(x, self.p - 2)
    }

    /// Reduces a big integer and returns it in Montgomery form.
    pub fn from_big(&self, x: &BigUint) -> u64 {
        let r = (x % self.p).to_u64().expect("residue fits");
        self.to_mont(r)
    }

    /// `Σ a_i b_i` with one reduction per 255 products.
    #[inline]
    pub fn dot(&self, a: impl Iterator<Item = u64>, b: impl Iterator<Item = u64>) -> u64 {
        let mut total = 0u64;
        let mut acc = 0u128;
        let mut pending = 0usize;
        for (x, y) in a.zip(b) {
            acc += x as u128 * y as u128;
            pending += 1;
            if pending == LAZY_CHUNK {
                total = self.add(total, self.redc(acc));
                acc = 0;
                pending = 0;
            }
        }
        self.add(total, self.redc(acc))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let f = MontField::new(n);
    let d_full = n - 1;
    let s = d_full.trailing_zeros();
    let d = d_full >> s;
    let one = f.one();
    let minus_one = f.to_mont(n - 1);
    // deterministic witness set for 64-bit integers
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = f.pow(f.to_mont(a), d);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const CACHED_PRIMES: usize = 8192;

fn next_prime_below(mut x: u64) -> u64 {
    if x % 2 == 0 {
        x -= 1;
    }
    while !is_prime_u64(x) {
        x -= 2;
    }
    x
}

fn prime_cache() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut out = Vec::with_capacity(CACHED_PRIMES);
        let mut x = (1u64 << PRIME_BITS) - 1;
        while out.len() < CACHED_PRIMES {
            let p = next_prime_below(x);
            out.push(p);
            x = p - 2;
        }
        out
    })
}

/// Descending primes below `2^56`, each at least `2^55`; the first 8192 are
/// cached, later ones are generated on demand.
pub fn primes() -> impl Iterator<Item = u64> {
    let cache = prime_cache();
    let last = *cache.last().expect("non-empty");
    cache.iter().copied().chain(std::iter::successors(
        Some(next_prime_below(last - 2)),
        |&p| Some(next_prime_below(p - 2)),
    ))
}

/// Primes whose product exceeds `2^bits`, skipping any prime for which
/// `usable` is false.
pub fn primes_for_bits(bits: u64, usable: impl Fn(u64) -> bool) -> Vec<u64> {
    let mut out = Vec::new();
    let mut covered = 0u64;
    for p in primes() {
        if covered > bits {
            break;
        }
        if !usable(p) {
            continue;
        }
        out.push(p);
        covered += (PRIME_BITS - 1) as u64;
    }
    out
}

/// Reconstructs the unique `x < Π p_i` from plain (non-Montgomery)
/// residues `x mod p_i`, by Garner's mixed-radix algorithm.
pub fn crt(primes: &[u64], residues: &[u64]) -> BigUint {
    assert_eq!(primes.len(), residues.len());
    let k = primes.len();
    let mut digits = Vec::with_capacity(k);
    for i in 0..k {
        let f = MontField::new(primes[i]);
        // acc = (d_0 + d_1 p_0 + ... + d_{i-1} p_0...p_{i-2}) mod p_i, plain
        let mut acc = 0u64;
        let mut prefix = f.one();
        for j in 0..i {
            acc = f.add(acc, f.mul(digits[j], prefix));
            prefix = f.mul(prefix, f.to_mont(primes[j]));
        }
        let diff = f.sub(residues[i] % primes[i], acc);
        // diff is plain, inv(prefix) is Montgomery: the product is plain
        digits.push(f.mul(diff, f.inv(prefix)));
    }
    let mut x = BigUint::zero();
    for i in (0..k).rev() {
        x = x * primes[i] + digits[i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_arithmetic_matches_u128() {
        let p = prime_cache()[3];
        let f = MontField::new(p);
        let (a, b) = (123_456_789_012_345u64 % p, (p - 17) % p);
        let prod = (a as u128 * b as u128 % p as u128) as u64;
        assert_eq!(f.from_mont(f.mul(f.to_mont(a), f.to_mont(b))), prod);
        let x = f.to_mont(987_654_321);
        assert_eq!(f.from_mont(f.mul(x, f.inv(x))), 1);
        assert_eq!(f.from_mont(f.sub(f.to_mont(3), f.to_mont(5))), p - 2);
    }

    #[test]
    fn dot_with_lazy_reduction() {
        let f = MontField::new(prime_cache()[0]);
        let xs: Vec<u64> = (0..1000).map(|i| f.to_mont(f.modulus() - 1 - i)).collect();
        let ys: Vec<u64> = (0..1000).map(|i| f.to_mont(f.modulus() - 7 - 3 * i)).collect();
        let mut slow = 0u64;
        for (x, y) in xs.iter().zip(&ys) {
            slow = f.add(slow, f.mul(*x, *y));
        }
        assert_eq!(f.dot(xs.iter().copied(), ys.iter().copied()), slow);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        let ps = prime_cache();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p >= 1u64 << (PRIME_BITS - 1)));
    }

    #[test]
    fn crt_reconstructs_big_values() {
        let x = BigUint::from(3u32).pow(500) + 12345u32;
        let ps = primes_for_bits(x.bits() + 1, |_| true);
        let rs: Vec<u64> = ps.iter().map(|&p| (&x % p).to_u64().unwrap()).collect();
        assert_eq!(crt(&ps, &rs), x);
    }
}
