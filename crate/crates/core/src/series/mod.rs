//! Truncated formal power series.
//!
//! [`PowerSeries`] is dense and generic over its coefficient ring: exact
//! rationals for the solver, [`Fp`] residues for the mod-`p` block checks.
//! [`MVPolynomial`] is a sparse truncated polynomial over `F_p` in variables
//! `t_1..t_r` and `y`, used for multivariate cumulants.

mod multivariate;
mod scalar;
mod univariate;

pub use multivariate::MVPolynomial;
pub use scalar::{Fp, Scalar};
pub use univariate::PowerSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("a power series needs at least one coefficient")]
    Empty,
    #[error("coefficient {index} requested beyond truncation order {order}")]
    BeyondTruncation { index: usize, order: usize },
    #[error("cannot extend truncation order {have} to {want}")]
    Extension { have: usize, want: usize },
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("substitution step must be positive")]
    ZeroStep,
    #[error("logarithm needs constant term 1")]
    LogConstant,
    #[error("exponential needs constant term 0")]
    ExpConstant,
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("division by {0} is not defined in the coefficient ring")]
    NonInvertibleInteger(i64),
    #[error("exponent vector {exponents:?} violates the degree caps")]
    CapViolation { exponents: Vec<u32> },
    #[error("operands have different shapes")]
    ShapeMismatch,
}
