use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. Positions in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vectors and matrices need at least one entry")]
    Empty,

    #[error("non-finite value at entry {}", index + 1)]
    NonFinite { index: usize },

    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {} is outside 1..={len}", index + 1)]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error(
        "enumerating 2^{exponent} sign vectors exceeds the 2^{limit} limit; \
         pass --force to run it anyway"
    )]
    GuardExceeded { exponent: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("Jacobi sweeps did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("need at least {needed} data points, got {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded { .. } => 3,
            Error::NoConvergence { .. }
            | Error::NotPositiveSemidefinite { .. }
            | Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}
