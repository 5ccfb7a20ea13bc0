//! Univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::MathError;

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `z^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Poly { coeffs }
    }

    /// `1 - z^k`
    pub fn one_minus_power(k: usize) -> Self {
        &Self::one() - &Self::monomial(k)
    }

    /// `prod (1 - z^d)` over the given degrees.
    pub fn cyclotomic_product(degrees: &[usize]) -> Self {
        degrees
            .iter()
            .fold(Self::one(), |acc, &d| &acc * &Self::one_minus_power(d))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly), MathError> {
        let Some(db) = b.degree() else {
            return Err(MathError::DivisionByZeroPoly);
        };
        let lc_inv = b.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        let Some(da) = self.degree().filter(|&da| da >= db) else {
            return Ok((Poly::zero(), self.clone()));
        };
        let mut quot = vec![BigRational::zero(); da - db + 1];
        for k in (db..=da).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                rem[k - db + i] -= &c * bc;
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, b: &Poly) -> Result<Poly, MathError> {
        if self.is_zero() && b.is_zero() {
            return Err(MathError::BothZero);
        }
        let (mut x, mut y) = (self.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.divmod(&y)?;
            x = y;
            y = r;
        }
        Ok(x.monic())
    }

    /// Exact quotient; errors if `b` does not divide `self`.
    pub fn exact_div(&self, b: &Poly) -> Result<Poly, MathError> {
        let (q, r) = self.divmod(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(MathError::NotDivisible)
        }
    }

    /// Scales so the constant term is 1 (no-op if it is zero).
    pub fn normalize_constant(&self) -> Poly {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            self.clone()
        } else {
            self.scale(&c0.recip())
        }
    }

    /// Nonnegative integer roots, found by scanning up to the Cauchy bound.
    pub fn nonnegative_integer_roots(&self) -> Vec<u64> {
        let Some(lc) = self.leading() else {
            return Vec::new();
        };
        let bound = self
            .coeffs
            .iter()
            .rev()
            .skip(1)
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
            + BigRational::one();
        let mut roots = Vec::new();
        let mut r = 0i64;
        while BigRational::from_integer(BigInt::from(r)) <= bound {
            if self.eval_int(r).is_zero() {
                roots.push(r as u64);
            }
            r += 1;
        }
        roots
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_integers(c.iter().copied())
    }

    #[test]
    fn divmod_by_hand() {
        // 1 + z^2 = -(z + 1)(1 - z) + 2
        let (q, r) = p(&[1, 0, 1]).divmod(&p(&[1, -1])).unwrap();
        assert_eq!(q, p(&[-1, -1]));
        assert_eq!(r, p(&[2]));

        let (q, r) = p(&[0, 1]).divmod(&p(&[0, 1])).unwrap();
        assert_eq!((q, r), (p(&[1]), Poly::zero()));

        let (q, r) = p(&[1]).divmod(&p(&[1, 0, -1])).unwrap();
        assert_eq!((q, r), (Poly::zero(), p(&[1])));
    }

    #[test]
    fn divmod_by_zero_is_an_error() {
        assert_eq!(p(&[1, 2]).divmod(&Poly::zero()), Err(MathError::DivisionByZeroPoly));
    }

    #[test]
    fn gcd_by_hand() {
        // monic 1 - z is z - 1
        let g = p(&[1, 0, -1]).gcd(&p(&[1, 0, 0, -1])).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        // gcd(2 + 4z, 0) = z + 1/2
        let half = Poly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::one()]);
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero()).unwrap(), half);
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])).unwrap(), Poly::one());
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Err(MathError::BothZero));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(p(&[-5, 1]).nonnegative_integer_roots(), vec![5]);
        assert_eq!(p(&[6, -5, 1]).nonnegative_integer_roots(), vec![2, 3]);
        assert!(p(&[1, 1]).nonnegative_integer_roots().is_empty());
        assert!(p(&[3]).nonnegative_integer_roots().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "1 - 2z + z^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
