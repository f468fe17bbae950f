//! Exact scalars, polynomials, fractions and horizontal forms.

pub mod form;
pub mod frac;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use form::{AnyForm, HorizontalForm, LaurentForm, RationalForm};
pub use frac::{laurent_coth_half, Frac, LaurentRational, PolyRing, RationalFunction};
pub use matrix::{Matrix, Vector};
pub use poly::{LaurentPolynomial, Monomial, Polynomial};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent {0} is not an integer")]
    NonIntegerExponent(String),
    #[error("{0} is not real")]
    NotReal(String),
    #[error("coefficient modes differ: {left} vs {right}")]
    ModeMismatch {
        left: &'static str,
        right: &'static str,
    },
}
