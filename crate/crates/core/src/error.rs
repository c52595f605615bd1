use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index ({row}, {col}) out of range for dimension {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },

    #[error("matrix is not symmetric: entry ({row}, {col}) = {value} but ({col}, {row}) = {mirror}")]
    Asymmetric {
        row: usize,
        col: usize,
        value: f64,
        mirror: f64,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate interval [{a}, {b}]")]
    DegenerateInterval { a: f64, b: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("quadrature order {j} too small for truncation order {k} (need at least {min})")]
    QuadratureTooSmall { j: usize, k: usize, min: usize },

    #[error("zero vector")]
    ZeroVector,

    #[error("no root bracketed: {0}")]
    NoRoot(String),

    #[error("criterion not met at maximal order {k_max}: achieved error {achieved:.3e} > {target:.3e}")]
    CriterionUnmet {
        k_max: usize,
        achieved: f64,
        target: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate triangle {0} (zero area)")]
    DegenerateTriangle(usize),

    #[error("anisotropy tensor on triangle {0} is not symmetric positive definite")]
    NotPositiveDefinite(usize),

    #[error("unsupported smoothness {0} (need integer or half-integer)")]
    UnsupportedSmoothness(f64),

    #[error("dimension {n} exceeds the dense oracle limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("model violation: {0}")]
    ModelViolation(String),

    #[error("I/O error on {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
