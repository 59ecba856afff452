use thiserror::Error;

use crate::cbp::MethodVerdicts;
use crate::cover::CoverResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a projective point needs at least one nonzero coordinate")]
    ZeroPoint,

    #[error("ambient dimension mismatch: P^{expected} vs P^{found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("duplicate point at labels {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },

    #[error("point label {label} out of range for a set of {len} points")]
    LabelOutOfRange { label: usize, len: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("point {label} lies on x0 = 0; apply ensure_x0_nonvanishing first")]
    X0Vanishes { label: usize },

    #[error("separator defect at degree {degree} for point {label} is {defect}, expected 1")]
    SeparatorDefect {
        label: usize,
        degree: usize,
        defect: usize,
    },

    #[error("CBP({r}) methods disagree: {verdicts:?}")]
    MethodDisagreement { r: usize, verdicts: MethodVerdicts },

    #[error("invalid plane configuration: {0}")]
    InvalidConfiguration(String),

    #[error("no positive-dimensional flat exists in P^0")]
    NoLinesInAmbient,

    #[error("{size} points exceed the exhaustive cover limit {limit}; greedy bound is {}", .greedy.total_dim)]
    Inexhaustive {
        size: usize,
        limit: usize,
        greedy: Box<CoverResult>,
    },

    #[error("generator failed: {0}")]
    Generator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
