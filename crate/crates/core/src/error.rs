//! Error type shared by all modules of the crate.

use std::fmt;
use std::io;

/// Errors reported by matrix kernels, channel I/O, and the rate evaluators.
#[derive(Debug)]
pub enum Error {
    /// Input matrix is not Hermitian within the stated tolerance.
    NotHermitian { max_asymmetry: f64 },
    /// A matrix or vector entry is NaN or infinite.
    NotFinite,
    /// A vector that must be nonzero has zero norm.
    ZeroVector,
    /// Operand dimensions are inconsistent.
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// A dimension argument is zero or otherwise unusable.
    InvalidDimensions(String),
    /// A time allocation violates the simplex constraints.
    InvalidAllocation(String),
    /// A transmit covariance exceeds its trace budget.
    InfeasibleCovariance {
        user: usize,
        trace: f64,
        budget: f64,
    },
    /// A simplex grid search would enumerate too many points.
    GridTooLarge { users: usize, resolution: usize },
    /// A finite-difference step leaves the unit interval.
    StepOutOfRange { component: usize, value: f64 },
    /// Underlying file-system failure.
    Io(io::Error),
    /// A channel file failed to parse.
    MalformedFile { line: usize, reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { max_asymmetry } => {
                write!(f, "matrix is not Hermitian (max |A - A^H| = {max_asymmetry:.3e})")
            }
            Error::NotFinite => write!(f, "non-finite entry encountered"),
            Error::ZeroVector => write!(f, "vector has zero norm"),
            Error::ShapeMismatch { expected, got } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::InvalidDimensions(msg) => write!(f, "invalid dimensions: {msg}"),
            Error::InvalidAllocation(msg) => write!(f, "invalid time allocation: {msg}"),
            Error::InfeasibleCovariance { user, trace, budget } => write!(
                f,
                "covariance of user {user} violates its power budget (trace {trace:.6e} > {budget:.6e})"
            ),
            Error::GridTooLarge { users, resolution } => write!(
                f,
                "simplex grid with {users} users at resolution {resolution} is too large"
            ),
            Error::StepOutOfRange { component, value } => write!(
                f,
                "finite-difference step leaves [0,1] at component {component} (value {value:.3e})"
            ),
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::MalformedFile { line, reason } => {
                write!(f, "malformed channel file at line {line}: {reason}")
            }
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}
