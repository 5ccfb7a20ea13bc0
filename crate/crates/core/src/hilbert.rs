//! Rational generating functions of dimension sequences and their
//! quasi-polynomial form.
//!
//! A window `a_{n0}, a_{n0+1}, ...` is read as the series
//! `sum_i a_{n0+i} z^i`; all indices reported outside this module
//! (residues, `valid_from`, `m0`) are absolute, i.e. in terms of `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::series::multiply_by_denominator;
use crate::exactmath::{series_coefficients, MathError, Poly, SeriesWindow};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("degree list is empty")]
    EmptyDegrees,
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("need at least {needed} terms, have {available}")]
    InsufficientData { needed: usize, available: usize },
    #[error("guard must be at least {minimum}, got {guard}")]
    GuardTooSmall { guard: usize, minimum: usize },
    #[error("window does not fit the denominator: coefficient {index} of the product is {value}")]
    NotRational { index: usize, value: String },
    #[error("quasi-polynomial disagrees with the generating function at n = {n}")]
    FitContradiction { n: u64 },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Smallest guard accepted by [`fit_numerator`].
pub const MIN_GUARD: usize = 4;
pub const DEFAULT_GUARD: usize = 8;

pub fn lcm_degrees(degrees: &[usize]) -> Result<usize, HilbertError> {
    if degrees.is_empty() {
        return Err(HilbertError::EmptyDegrees);
    }
    if degrees.contains(&0) {
        return Err(HilbertError::ZeroDegree);
    }
    Ok(degrees.iter().fold(1, |acc, d| acc.lcm(d)))
}

/// `numerator / prod (1 - z^d)`, with coefficient `i` standing for
/// `n = start + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: Poly,
    pub degrees: Vec<usize>,
    pub start: u64,
}

impl RationalGF {
    pub fn coefficients(&self, n_terms: usize) -> Vec<BigRational> {
        series_coefficients(&self.numerator, &self.degrees, n_terms)
    }
}

/// Recovers the numerator from a window. Accepted when the last `guard`
/// coefficients of `window * prod (1 - z^d)` vanish.
pub fn fit_numerator(window: &SeriesWindow, degrees: &[usize], guard: usize) -> Result<RationalGF, HilbertError> {
    if degrees.is_empty() {
        return Err(HilbertError::EmptyDegrees);
    }
    if degrees.contains(&0) {
        return Err(HilbertError::ZeroDegree);
    }
    if guard < MIN_GUARD {
        return Err(HilbertError::GuardTooSmall {
            guard,
            minimum: MIN_GUARD,
        });
    }
    let needed = degrees.iter().sum::<usize>() + guard;
    if window.len() < needed {
        return Err(HilbertError::InsufficientData {
            needed,
            available: window.len(),
        });
    }
    let product = multiply_by_denominator(window.terms(), degrees);
    let cut = window.len() - guard;
    if let Some((i, v)) = product.iter().enumerate().skip(cut).find(|(_, v)| !v.is_zero()) {
        return Err(HilbertError::NotRational {
            index: i,
            value: v.to_string(),
        });
    }
    let gf = RationalGF {
        numerator: Poly::from_bigints(&product[..cut]),
        degrees: degrees.to_vec(),
        start: window.start(),
    };
    debug_assert!(gf
        .coefficients(window.len())
        .iter()
        .zip(window.terms())
        .all(|(c, &t)| *c == BigRational::from_integer(BigInt::from(t))));
    Ok(gf)
}

/// `u(z) + p(z) / q(z)` in lowest terms with `q(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGF {
    pub poly_part: Poly,
    pub numerator: Poly,
    pub denominator: Poly,
    /// Number of factors `1 - z^d` in the unreduced denominator; bounds
    /// the pole order at every root of unity.
    pub factor_count: usize,
    pub degrees: Vec<usize>,
    pub start: u64,
}

impl ReducedGF {
    /// First `n_terms` series coefficients, by power-series division.
    pub fn coefficients(&self, n_terms: usize) -> Vec<BigRational> {
        let q = &self.denominator;
        let mut out: Vec<BigRational> = Vec::with_capacity(n_terms);
        for i in 0..n_terms {
            let mut c = self.numerator.coeff(i);
            for k in 1..=q.degree().unwrap_or(0).min(i) {
                c -= q.coeff(k) * &out[i - k];
            }
            out.push(c);
        }
        for (i, c) in self.poly_part.coeffs().iter().enumerate().take(n_terms) {
            out[i] += c;
        }
        out
    }

    /// First `n` (absolute) from which the polynomial part no longer
    /// contributes.
    pub fn valid_from(&self) -> u64 {
        match self.poly_part.degree() {
            Some(d) => self.start + d as u64 + 1,
            None => self.start,
        }
    }
}

pub fn reduce_gf(gf: &RationalGF) -> Result<ReducedGF, HilbertError> {
    let full = Poly::cyclotomic_product(&gf.degrees);
    let (u, r) = gf.numerator.divmod(&full)?;
    let (p, q) = if r.is_zero() {
        (Poly::zero(), Poly::one())
    } else {
        let g = r.gcd(&full)?;
        let p = r.exact_div(&g)?;
        let q = full.exact_div(&g)?;
        // roots of q are roots of unity, so q(0) != 0
        let c = q.coeff(0).recip();
        (p.scale(&c), q.scale(&c))
    };
    Ok(ReducedGF {
        poly_part: u,
        factor_count: if q.degree() == Some(0) { 0 } else { gf.degrees.len() },
        numerator: p,
        denominator: q,
        degrees: gf.degrees.clone(),
        start: gf.start,
    })
}

/// `n -> g_{n mod d}(n)` for `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: usize,
    pub components: Vec<Poly>,
    pub valid_from: u64,
}

impl QuasiPolynomial {
    pub fn value(&self, n: u64) -> BigRational {
        let j = (n % self.period as u64) as usize;
        self.components[j].eval(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Smallest divisor `d'` of the period with `g_j = g_{j + d'}`.
    pub fn minimal_period(&self) -> usize {
        let d = self.period;
        (1..=d)
            .filter(|p| d.is_multiple_of(*p))
            .find(|&p| (0..d).all(|j| self.components[j] == self.components[(j + p) % d]))
            .unwrap_or(d)
    }
}

fn interpolate(points: &[(BigRational, BigRational)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::new(vec![-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// Extracts `g_0, ..., g_{d-1}` by interpolating `factor_count` values per
/// residue class and checks them against the window and two further terms
/// of each class.
pub fn quasi_polynomial(red: &ReducedGF, d: usize, window: &SeriesWindow) -> Result<QuasiPolynomial, HilbertError> {
    if d == 0 {
        return Err(HilbertError::ZeroDegree);
    }
    let start = red.start;
    let valid_from = red.valid_from();
    let t = red.factor_count;
    let du = d as u64;
    let first_in_class = |j: u64| valid_from + (j + du - valid_from % du) % du;
    // samples for class j are first_in_class(j) + k d, k < t + 2
    let last_needed = (0..du).map(|j| first_in_class(j) + du * (t as u64 + 1)).max().unwrap_or(start);
    let n_terms = ((last_needed - start + 1) as usize).max(window.len() + 2 * d);
    let coeffs = red.coefficients(n_terms);
    let value_at = |n: u64| coeffs[(n - start) as usize].clone();

    let components: Vec<Poly> = (0..du)
        .map(|j| {
            let points: Vec<(BigRational, BigRational)> = (0..t as u64)
                .map(|k| {
                    let n = first_in_class(j) + k * du;
                    (BigRational::from_integer(BigInt::from(n)), value_at(n))
                })
                .collect();
            interpolate(&points)
        })
        .collect();
    let qp = QuasiPolynomial {
        period: d,
        components,
        valid_from,
    };

    for n in (window.end() + 1..window.end() + 1 + 2 * du).filter(|&n| n >= valid_from) {
        if qp.value(n) != value_at(n) {
            return Err(HilbertError::FitContradiction { n });
        }
    }
    for (n, a) in window.iter().filter(|(n, _)| *n >= valid_from) {
        if qp.value(n) != BigRational::from_integer(BigInt::from(a)) {
            return Err(HilbertError::FitContradiction { n });
        }
    }
    Ok(qp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    EventuallyZero,
    PeriodicNonvanishing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    QuasiPolynomial,
    RegularElement,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub verdict: Verdict,
    pub period: usize,
    /// Residues `j` (mod `period`) with `g_j != 0`, ascending.
    pub nonvanishing_residues: Vec<usize>,
    pub m0: u64,
    pub provenance: Provenance,
    /// Smallest period of the quasi-polynomial itself; divides `period`.
    pub minimal_period: usize,
}

/// `m0` is the least integer `>= valid_from` beyond every nonnegative
/// integer root of a nonzero component.
pub fn classify(qp: &QuasiPolynomial) -> VanishingReport {
    let residues: Vec<usize> = (0..qp.period).filter(|&j| !qp.components[j].is_zero()).collect();
    let max_root = residues
        .iter()
        .flat_map(|&j| qp.components[j].nonnegative_integer_roots())
        .max();
    let m0 = match max_root {
        Some(r) => qp.valid_from.max(r + 1),
        None => qp.valid_from,
    };
    VanishingReport {
        verdict: if residues.is_empty() {
            Verdict::EventuallyZero
        } else {
            Verdict::PeriodicNonvanishing
        },
        period: qp.period,
        nonvanishing_residues: residues,
        m0,
        provenance: Provenance::QuasiPolynomial,
        minimal_period: qp.minimal_period(),
    }
}
