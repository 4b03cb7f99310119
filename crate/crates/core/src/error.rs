use thiserror::Error;

use crate::algebra::dsl::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lowest term is not a unit: {0}")]
    NonUnit(String),

    #[error("degenerate factor: {0}")]
    Degenerate(String),

    #[error("truncation headroom exhausted: need q-order {needed}, have {available}")]
    HeadroomExhausted { needed: i64, available: i64 },

    #[error("not stable: {0}")]
    NotStable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("algebra is not free; resolve it first ({0})")]
    NotFree(String),

    #[error("untrusted slice: {0}")]
    Untrusted(String),

    #[error("relative mode unavailable: {0}")]
    RelativeUnavailable(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
