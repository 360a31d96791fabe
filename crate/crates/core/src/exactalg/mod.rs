//! Exact arithmetic substrate: rationals, sparse multivariate polynomials
//! and dense rational matrices.
//!
//! Nothing in the crate ever rounds. Every coefficient is a [`Rational`]
//! and every integer vector is either `i64` (small, bounded data such as
//! weights and divisor classes) or [`BigInt`] (anything produced by
//! elimination).

mod matrix;
mod polynomial;
mod rational;

pub use matrix::{Echelon, RationalMatrix};
pub use polynomial::{Exponent, ParsePolyError, Polynomial};
pub use rational::{
    integer_vector_to_rationals, parse_rational, primitive_integer_vector, rational_to_string,
    Rational,
};

pub use num_bigint::BigInt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("order of zero section undefined")]
    ZeroSection,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("arity mismatch: expected {expected} images, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
}
