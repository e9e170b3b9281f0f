use thiserror::Error;

/// Errors raised by the engine.
///
/// A failed mathematical check (nonzero residue, broken identity) is never an
/// error: it is reported as a FAIL verdict in the corresponding report type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} exceeds ambient rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("generator indices start at 1")]
    ZeroIndex,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid morphism of the auxiliary category: {0}")]
    InvalidGMorphism(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported ring: {0}")]
    Ring(String),

    #[error("variance mismatch: {0}")]
    Variance(String),

    #[error("kernel over Z has no unit-coordinate basis ({0}); use field coefficients")]
    NonFree(String),

    #[error("not a chain complex: d_{degree} * d_{} != 0", degree + 1)]
    NotAComplex { degree: usize },

    #[error("functoriality failure: {0}")]
    Functoriality(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
