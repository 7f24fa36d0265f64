use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vanishing sequence must be strictly increasing and nonnegative: {0:?}")]
    InvalidSequence(Vec<i64>),
    #[error("vanishing order {top} exceeds degree {degree}")]
    OrderExceedsDegree { top: i64, degree: i64 },
    #[error("sequence has {len} entries but r = {r}")]
    LengthMismatch { len: usize, r: i64 },
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("genus {g} too small (need g >= {min})")]
    GenusTooSmall { g: i64, min: i64 },
    #[error("adjusted Brill-Noether number is {0}, expected -1")]
    RhoNotMinusOne(i64),
    #[error("classes live over different contexts: (g={g1}, k={k1}) vs (g={g2}, k={k2})")]
    ContextMismatch { g1: i64, k1: i64, g2: i64, k2: i64 },
    #[error("linear system is singular")]
    SingularSystem,
    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),
    #[error("zero denominator in threshold expression")]
    ZeroDenominator,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("table schema mismatch: {0}")]
    Schema(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
