//! Exact scalars, Laurent polynomials and dense matrices.

mod laurent;
mod matrix;
mod scalar;

pub use laurent::LaurentPoly;
pub use matrix::{laurent_det, rank, rref, solve_linear, ExactMatrix, LinearSolution};
pub use scalar::{
    format_rational, rational, rational_to_i64, ExactDiv, Field, Fp, Fp32003, Rational, Ring,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have different lengths")]
    Ragged,
    #[error("fraction-free elimination hit an inexact division")]
    InexactDivision,
}
