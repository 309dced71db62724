use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
///
/// Most of these signal that an input fell outside the algebra an operation
/// is defined on (a polynomial that is not deformed-symmetric, a partition
/// outside a fat hook, ...). They are never recovered from internally.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation at pole")]
    EvaluationAtPole,
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("variable space mismatch")]
    SpaceMismatch,
    #[error("partition {0} is not in the fat hook H({1},{2})")]
    NotInHook(String, usize, usize),
    #[error("partition {0} has more than {1} parts")]
    TooManyParts(String, usize),
    #[error("hyperplane division failed")]
    HyperplaneDivision,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("not in span")]
    NotInSpan,
    #[error("degenerate eigenvalue ladder for {0}")]
    Degenerate(String),
    #[error("singular matrix")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
