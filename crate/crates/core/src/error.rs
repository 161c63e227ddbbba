//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point lies outside the domain (or within the boundary guard band): {0}")]
    OutsideDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("basis vectors are not pairwise orthogonal")]
    NotOrthogonal,

    #[error("basis is rank-deficient (rank {rank} < {vectors} vectors)")]
    RankDeficient { rank: usize, vectors: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("operation not supported for this action: {0}")]
    UnsupportedAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
