//! Truncated power series and finite windows of dimension sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::MathError;

/// Consecutive terms `a_start, a_{start+1}, ...` of a nonnegative sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesWindow {
    start: u64,
    terms: Vec<u64>,
}

impl SeriesWindow {
    pub fn new(start: u64, terms: Vec<u64>) -> Result<Self, MathError> {
        if terms.is_empty() {
            return Err(MathError::EmptyWindow);
        }
        Ok(SeriesWindow { start, terms })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index of the last term.
    pub fn end(&self) -> u64 {
        self.start + self.terms.len() as u64 - 1
    }

    /// Term at absolute index `n`, if inside the window.
    pub fn at(&self, n: u64) -> Option<u64> {
        n.checked_sub(self.start)
            .and_then(|i| self.terms.get(i as usize).copied())
    }

    /// `(n, a_n)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms
            .iter()
            .enumerate()
            .map(move |(i, &t)| (self.start + i as u64, t))
    }

    /// Sub-window `[from, to]` in absolute indices, clamped to the window.
    pub fn slice(&self, from: u64, to: u64) -> Result<Self, MathError> {
        let lo = from.max(self.start);
        let hi = to.min(self.end());
        if lo > hi {
            return Err(MathError::EmptyWindow);
        }
        let a = (lo - self.start) as usize;
        let b = (hi - self.start) as usize;
        Self::new(lo, self.terms[a..=b].to_vec())
    }

    pub fn scaled(&self, c: u64) -> Self {
        SeriesWindow {
            start: self.start,
            terms: self.terms.iter().map(|t| t * c).collect(),
        }
    }

    pub fn is_all_zero(&self) -> bool {
        self.terms.iter().all(|&t| t == 0)
    }
}

/// First `n_terms` coefficients of `numerator / prod (1 - z^d)`.
pub fn series_coefficients(numerator: &Poly, denominator_degrees: &[usize], n_terms: usize) -> Vec<BigRational> {
    let mut coeffs: Vec<BigRational> = (0..n_terms).map(|i| numerator.coeff(i)).collect();
    // dividing by (1 - z^d) is a running sum with stride d
    for &d in denominator_degrees {
        assert!(d > 0, "denominator degrees are positive");
        for i in d..n_terms {
            let prev = coeffs[i - d].clone();
            coeffs[i] += prev;
        }
    }
    coeffs
}

/// Expansion of `numerator / prod (1 - z^d)` as a window starting at 0.
///
/// Errors if a coefficient is not a nonnegative integer.
pub fn series_expand(numerator: &Poly, denominator_degrees: &[usize], n_terms: usize) -> Result<SeriesWindow, MathError> {
    if n_terms == 0 {
        return Err(MathError::EmptyWindow);
    }
    let terms = series_coefficients(numerator, denominator_degrees, n_terms)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if !c.is_integer() || c.is_negative() {
                return Err(MathError::NotADimension { index: i, value: c.to_string() });
            }
            c.to_integer()
                .to_u64()
                .ok_or_else(|| MathError::NotADimension { index: i, value: c.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    SeriesWindow::new(0, terms)
}

/// `window * prod (1 - z^d)` truncated to the window length, as integers.
pub fn multiply_by_denominator(terms: &[u64], denominator_degrees: &[usize]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = terms.iter().map(|&t| BigInt::from(t)).collect();
    for &d in denominator_degrees {
        for i in (d..out.len()).rev() {
            let prev = out[i - d].clone();
            out[i] -= prev;
        }
    }
    out
}

/// True if every coefficient of the slice is zero.
pub fn all_zero(values: &[BigInt]) -> bool {
    values.iter().all(|v| v.is_zero())
}
