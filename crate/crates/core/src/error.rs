use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroFactorization,

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("exponent must be positive")]
    ZeroExponent,

    #[error("singular matrix (determinant 0)")]
    SingularMatrix,

    #[error("degenerate leading coefficient")]
    DegenerateLeadingCoefficient,

    #[error("form of degree {0} has no discriminant (degree must be at least 2)")]
    DegreeTooSmall(usize),

    #[error("a binary form needs at least one coefficient")]
    EmptyForm,

    #[error("transvectant order {r} exceeds min({m}, {n})")]
    TransvectantOrder { r: usize, m: usize, n: usize },

    #[error("singular curve (discriminant 0)")]
    SingularCurve,

    #[error("transformation leaves integral model: {coefficient} = {value}")]
    NonIntegral { coefficient: String, value: Rational },

    #[error("transformation requires u != 0")]
    ZeroScaling,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("no integral model found for u = {0}")]
    ReductionFailed(BigInt),
}

impl Error {
    /// Zero-discriminant inputs are reported separately from malformed ones.
    pub fn is_singular(&self) -> bool {
        matches!(self, Error::SingularCurve)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
