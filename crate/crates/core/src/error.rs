//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, JsrError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JsrError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("enumeration budget exceeded: {required} words required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("kronecker budget exceeded: dimension {required} required, budget is {budget}")]
    KroneckerBudgetExceeded { required: u128, budget: usize },

    #[error(
        "overflow risk: product entry magnitude {magnitude:e} exceeds {threshold:e}; \
         rescale the set by 1/‖A‖ and retry"
    )]
    OverflowRisk { magnitude: f64, threshold: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("negative entry {value} in matrix {matrix} at ({row}, {col}); kronecker bounds need nonnegative matrices")]
    NegativeEntry {
        matrix: usize,
        row: usize,
        col: usize,
        value: f64,
    },

    #[error("exact convex hulls are only available for dimension 1..=3 (got {dim}); use the sampling estimate instead")]
    ExactHullUnavailable { dim: usize },

    #[error(
        "no certificate: irreducibility not established at this mesh (chi lower bound {chi_lower})"
    )]
    NoCertificate { chi_lower: f64 },

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: &'static str },
}
