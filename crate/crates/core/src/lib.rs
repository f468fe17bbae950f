//! Exact computer algebra for Dunkl operators viewed as covariant derivatives of
//! connections on a finite-group bundle over the complement of a reflection
//! arrangement.
//!
//! The crate is layered bottom-up: [`algebra`] (scalars, polynomials, forms),
//! [`rootsystem`], [`coxeter`], [`dunkl`], [`qcalc`] (the calculus on the
//! group's function algebra) and [`bundle`] (connections, covariant derivatives
//! and curvature).

pub mod algebra;
pub mod par;

pub use algebra::{AlgebraError, Matrix, Polynomial, RationalFunction, Scalar};
pub mod bundle;
pub mod coxeter;
pub mod dunkl;
pub mod qcalc;
pub mod rootsystem;
pub mod sample;
