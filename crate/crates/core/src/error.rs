use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("matrix does not commute with J (residual {0:.6e})")]
    NotJCommuting(f64),
    #[error("matrix is not Hermitian (deviation {0:.6e})")]
    NotHermitian(f64),
    #[error("matrix is not symmetric (deviation {0:.6e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive definite (min eigenvalue {0:.6e})")]
    NotPositiveDefinite(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.6e})")]
    NotPsd(f64),
    #[error("matrix is not symplectic (residual {0:.6e})")]
    NotSymplectic(f64),
    #[error("matrix is not unitary (residual {0:.6e})")]
    NotUnitary(f64),
    #[error("state violates the uncertainty relation (min eigenvalue {0:.6e})")]
    InvalidState(f64),
    #[error("covariance is not passive-unitary diagonalizable (commutator residual {0:.6e})")]
    NotPunCovariance(f64),
    #[error("invalid (A, Lambda) parameters: {0}")]
    InvalidParams(String),
    #[error("the mean map I - Lambda - 2AC is singular")]
    SingularMeanMap,
    #[error("symplectic eigenvalue {0} is below the vacuum floor 1/2")]
    NotAState(f64),
    #[error("state is not classical (min eigenvalue of S - I/2 is {0:.6e})")]
    NotClassical(f64),
    #[error("state is not passive-unitary normalizable (commutator residual {0:.6e})")]
    NotPun(f64),
    #[error("classical covariance is singular (min eigenvalue {0:.6e})")]
    SingularSigma(f64),
    #[error("state mean is not zero (|m| = {0:.6e})")]
    NonzeroMean(f64),
    #[error("eigensolver failed to converge")]
    ConvergenceFailure,
    #[error("classification cross-checks disagree: {0}")]
    InconsistentClassification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
