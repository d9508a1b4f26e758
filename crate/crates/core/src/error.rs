use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix size {n} is too small (need at least {min})")]
    SizeTooSmall { n: usize, min: usize },

    #[error("coefficient b_{index} is zero")]
    ZeroCoefficient { index: usize },

    #[error("zero polynomial has no roots to isolate")]
    ZeroPolynomial,

    #[error("polynomial must have a positive leading coefficient")]
    NegativeLeadingCoefficient,

    #[error("largest positive root has even multiplicity; no sign change to bracket")]
    TangentialRoot,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not diagonal")]
    NotDiagonal,

    #[error("matrix is not traceless")]
    NotTraceless,

    #[error("iterated bracket did not vanish within {limit} steps")]
    BracketLimit { limit: usize },

    #[error("word is not reduced: {0}")]
    UnreducedWord(String),

    #[error("invalid family/size combination: {0}")]
    InvalidFamily(String),

    #[error("parameter {value} does not exceed the certified bound {bound}")]
    BelowBound { value: String, bound: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("canonical relation failed: {0}")]
    RelationFailure(String),

    #[error("seed set is empty")]
    EmptySeed,

    #[error("width must be positive")]
    NonPositiveWidth,
}
