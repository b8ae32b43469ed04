use thiserror::Error;

use crate::moves::InvalidReason;

/// Errors raised by complex construction, queries, moves and searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: at least one facet is required")]
    EmptyInput,
    #[error("empty face in facet list")]
    EmptyFace,
    #[error("not a face of the complex: {0}")]
    NotAFace(String),
    #[error("unknown vertex: {0}")]
    UnknownVertex(String),
    #[error("vertex sets are not disjoint (shared vertex {0})")]
    VertexClash(String),
    #[error("complex is not a pure weak pseudomanifold")]
    NotWeakPseudomanifold,
    #[error("complex is not a normal pseudomanifold")]
    NotNormalPseudomanifold,
    #[error("bad dimension: {0}")]
    BadDimension(i64),
    #[error("invalid move: {0}")]
    InvalidMove(InvalidReason),
    #[error("replay failed at step {step}: {reason}")]
    ReplayFailure { step: usize, reason: String },
    #[error("field descriptor {0} is too large (must be below 2^31)")]
    FieldTooLarge(u64),
    #[error("field descriptor {0} is not prime")]
    NotPrime(u64),
    #[error("complex is not closed")]
    NotClosed,
    #[error("homology ball screen failed: {0}")]
    NotABall(String),
    #[error("exact ear detection needs boundary dimension <= 2 (got {0})")]
    DimensionTooHigh(i64),
    #[error("vertex guard exceeded: {found} vertices, guard {guard}")]
    GuardExceeded { found: usize, guard: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("not a facet: {0}")]
    NotFacet(String),
    #[error("bad matching: {0}")]
    BadMatching(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("too many vertices: {0} (limit {limit})", limit = crate::complex::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
