use thiserror::Error;

use crate::certify::Certificate;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hull conversion is built in only for dimension <= 3 (got {0}); supply both representations")]
    UnsupportedDimension(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("size limit exceeded: {what} = {count} > {limit}")]
    SizeLimit {
        what: &'static str,
        count: usize,
        limit: usize,
    },
    #[error("not a sphere isometry: {0}")]
    NotAnIsometry(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("space failed validation: {}", .0.note.as_deref().unwrap_or("unknown violation"))]
    Invalid(Box<Certificate>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
