//! Scalar backends for the exact dynamic programs.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::modular::MontField;

/// The operations the exact DPs need. Implemented by a prime field (the fast
/// exact route, finished by CRT) and by big rationals (the direct route).
pub trait Arith {
    type E: Clone;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_u64(&self, x: u64) -> Self::E;
    fn from_big(&self, x: &BigUint) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Only called on values known to be nonzero.
    fn inv(&self, a: &Self::E) -> Self::E;

    fn pow(&self, base: &Self::E, mut e: u64) -> Self::E {
        let mut acc = self.one();
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// `Σ_i a_i b_{len-1-i}`, the convolution step of the DPs.
    fn dot_rev(&self, a: &[Self::E], b: &[Self::E]) -> Self::E {
        debug_assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b.iter().rev())
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

impl Arith for MontField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        MontField::one(self)
    }
    fn from_u64(&self, x: u64) -> u64 {
        self.to_mont(x)
    }
    fn from_big(&self, x: &BigUint) -> u64 {
        MontField::from_big(self, x)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        MontField::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        MontField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        MontField::mul(self, *a, *b)
    }
    fn inv(&self, a: &u64) -> u64 {
        MontField::inv(self, *a)
    }
    fn pow(&self, base: &u64, e: u64) -> u64 {
        MontField::pow(self, *base, e)
    }
    fn dot_rev(&self, a: &[u64], b: &[u64]) -> u64 {
        MontField::dot(self, a.iter().copied(), b.iter().rev().copied())
    }
}

/// Exact rational arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Arith for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_u64(&self, x: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn from_big(&self, x: &BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(x.clone()))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}
