use thiserror::Error;

use crate::verifier::VerificationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{what} failed validation:\n{report}")]
    ValidationFailed {
        what: &'static str,
        report: VerificationReport,
    },

    #[error("input is not a flat affine symplectic Lie algebra:\n{0}")]
    NotFasla(VerificationReport),

    #[error("the form is degenerate")]
    DegenerateForm,

    #[error("the form is not a 2-cocycle of the bracket")]
    NotCocycle,

    #[error("bracket is not a Lie bracket")]
    NotLieBracket,

    #[error("the product is not associative")]
    NotAssociative,

    #[error("the product is not left-symmetric")]
    NotLeftSymmetric,

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("non-nilpotent exponential: L_x has minimal polynomial {min_poly:?} (coefficients, constant term first)")]
    NonNilpotent { min_poly: Vec<String> },

    #[error("series order cap {cap} is below the nilpotency index {index}")]
    OrderCapExceeded { cap: usize, index: usize },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
