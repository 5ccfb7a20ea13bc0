//! Ground fields: prime fields `F_p` and the rationals.
//!
//! A [`Field`] is a small context object; elements are plain values of the
//! associated `Elem` type. All arithmetic is exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::MathError;

/// Runtime description of a ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Whether `a` is a canonical representative of a field element.
    fn is_valid(&self, a: &Self::Elem) -> bool;

    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<u64>;

    /// The `idx`-th element in a fixed enumeration (`0` first). Only
    /// meaningful for finite fields, where `idx < size()`.
    fn element(&self, idx: u64) -> Self::Elem;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn to_string(&self, a: &Self::Elem) -> String;

    /// Canonical integer representative in `[0, p)` for prime fields.
    fn as_residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc + a * b`
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `F_p`, elements stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Primes up to `2^32` so that products fit in a `u64`.
    pub fn new(p: u64) -> Result<Self, MathError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(MathError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_valid(&self, a: &u64) -> bool {
        *a < self.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.p)
    }

    fn element(&self, idx: u64) -> u64 {
        idx % self.p
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn to_string(&self, a: &u64) -> String {
        a.to_string()
    }

    fn as_residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }

    #[inline]
    fn mul_add(&self, acc: &u64, a: &u64, b: &u64) -> u64 {
        (acc + a * b) % self.p
    }
}

/// The field of rational numbers, elements always in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Half-width of the integer range sampled by [`Rationals::random`].
const RATIONAL_SAMPLE_RADIUS: i64 = 16;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_valid(&self, a: &BigRational) -> bool {
        // BigRational keeps itself reduced with a positive denominator
        a.denom().is_positive()
    }

    fn size(&self) -> Option<u64> {
        None
    }

    /// Enumerates 0, 1, -1, 2, -2, ...
    fn element(&self, idx: u64) -> BigRational {
        let half = idx.div_ceil(2) as i64;
        let v = if idx % 2 == 1 { half } else { -half };
        self.from_i64(v)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_RADIUS..=RATIONAL_SAMPLE_RADIUS))
    }

    fn to_string(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Converts a rational to `i64` when it is an integer in range.
pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}
