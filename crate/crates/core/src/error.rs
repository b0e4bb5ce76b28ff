use std::path::PathBuf;

use crate::eigen::{EigenPair, SpectrumResult};
use crate::slam::SlamResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dual-number division is undefined for this divisor")]
    DivisionUndefined,

    #[error("dual-number square root requires a positive standard part (got {0})")]
    SqrtUndefined(f64),

    #[error("non-finite component")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("empty vector")]
    Empty,

    #[error("result is not a dual number (vector part magnitude {0:e})")]
    NotScalar(f64),

    #[error("cannot project the zero dual quaternion")]
    ZeroInput,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix has a zero standard part")]
    ZeroStandardPart,

    #[error("power method did not converge in {} iterations (residual {:e})", .0.iters, .0.residual)]
    NoConvergence(Box<EigenPair>),

    #[error("deflation step {index} failed: {source}")]
    Deflation {
        index: usize,
        partial: Box<SpectrumResult>,
        #[source]
        source: Box<Error>,
    },

    #[error("dual-part system is singular beyond the gauge freedom (rank {rank}, residual {residual:e})")]
    SingularSystem { rank: usize, residual: f64 },

    #[error("pose {index} is not a unit dual quaternion")]
    NotUnitPose { index: usize },

    #[error("invalid sparsity {sparsity} for a graph on {n} vertices")]
    InvalidSparsity { n: usize, sparsity: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("block coordinate descent stopped after {} iterations with gap {:e}", .0.iters, .0.final_gap())]
    SlamNoConvergence(Box<SlamResult>),

    #[error("rank-one factor has non-positive eigenvalue {0}")]
    NonPositiveLambda(f64),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// Whether this is a soft convergence failure that still carries a usable result.
    pub fn is_convergence(&self) -> bool {
        match self {
            Error::NoConvergence(_) | Error::SlamNoConvergence(_) => true,
            Error::Deflation { source, .. } => source.is_convergence(),
            _ => false,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
