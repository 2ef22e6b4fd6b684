use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges or nodes")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "graph has {n} nodes, above the dense threshold of {threshold}; use the approximate spectrum"
    )]
    TooLargeForDense { n: usize, threshold: usize },

    #[error("eigensolver did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    Convergence {
        iterations: usize,
        worst_residual: f64,
    },

    #[error("inconsistent spectrum ends: largest low eigenvalue {lo_max} exceeds smallest high eigenvalue {hi_min}")]
    InconsistentEnds { lo_max: f64, hi_min: f64 },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("incompatible signatures: {0}")]
    Incompatible(String),

    #[error("collection is empty")]
    EmptyCollection,

    #[error("unknown graph id `{0}`")]
    UnknownId(String),

    #[error("dense eigensolver failed: {0}")]
    Eigensolver(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
