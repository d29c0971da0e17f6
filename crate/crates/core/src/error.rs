use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition on the arguments does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The tridiagonal QL iteration did not converge for one eigenvalue.
    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    /// A matrix that should be Hermitian deviates from its adjoint.
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e} (allowed {allowed:e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    /// A polynomial operation would exceed the configured degree cap.
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    /// The polynomial has no nonzero coefficient.
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    /// Least-squares fit with too few points or constant abscissae.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of the numerical machinery rather than the caller.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::NotHermitian { .. } | Error::DegreeOverflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
