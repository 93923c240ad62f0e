//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension error: {detail}")]
    Dimension { detail: String },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (relative residual {residual:.3e} > tol {tol:.3e})")]
    NotHermitian { residual: f64, tol: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("eigenvalue {value:.6e} outside function domain {domain} beyond tolerance")]
    DomainViolation { value: f64, domain: String },
    #[error("vector e is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },
}

#[derive(Debug, Error)]
pub enum ChainError {
    #[error("unknown chain id `{0}`")]
    UnknownChain(String),
    #[error("input does not match chain signature: {0}")]
    SignatureMismatch(String),
    #[error("positive-pair chain requires PSD inputs: {0}")]
    PositivityViolation(String),
    #[error(transparent)]
    Numeric(#[from] LinalgError),
}
