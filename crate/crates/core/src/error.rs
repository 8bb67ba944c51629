//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("gcd of two zero polynomials is undefined")]
    ZeroPolyGcd,

    #[error("basis does not span a commutative set: {0}")]
    NotCommutative(String),

    #[error("factor lies outside the commutant of the entry algebra: {0}")]
    OutsideCommutant(String),

    #[error("family is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
