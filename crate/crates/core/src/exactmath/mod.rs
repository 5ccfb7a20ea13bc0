//! Exact arithmetic: prime fields and rationals, dense linear algebra,
//! univariate polynomials, and truncated power series.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod series;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{DenseMatrix, LinearSolver, Subspace};
pub use poly::Poly;
pub use series::{series_coefficients, series_expand, SeriesWindow};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("invalid field element {0}")]
    InvalidElement(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("series window is empty")]
    EmptyWindow,
    #[error("coefficient {value} at index {index} is not a nonnegative integer")]
    NotADimension { index: usize, value: String },
}
