use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("ambient module mismatch: {0}")]
    AmbientMismatch(String),

    #[error("resource ceiling reached: {0}")]
    ResourceLimit(String),

    #[error("operation requires a nonzero module")]
    ZeroModule,

    #[error("class group has torsion (invariant factors {0:?}); unsupported")]
    TorsionClassGroup(Vec<i64>),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan is not complete: {0}")]
    IncompleteFan(String),

    #[error("bidegree {degree} is within {margin} of the window boundary [{lo}, {hi}]")]
    WindowTooNarrow { degree: i64, margin: i64, lo: i64, hi: i64 },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
