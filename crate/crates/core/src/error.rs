use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    /// Every coefficient below the truncation vanished, so an order could not be read.
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("quotient has negative order: {0}")]
    NotASeries(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("curve does not pass through the origin")]
    NotAtOrigin,

    #[error("defining equation has a repeated factor through the origin")]
    NonReducedInput,

    #[error("parametrisation is not reduced: every exponent is divisible by {0}")]
    NonReducedParametrization(u64),

    #[error("invalid parametrisation: {0}")]
    InvalidCurve(String),

    #[error("evolute escapes to infinity: {0}")]
    EvoluteEscapes(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("branch {index} does not lie on the curve: {detail}")]
    BranchMismatch { index: usize, detail: String },

    #[error("parameter out of range for {row}: {detail}")]
    RangeError { row: String, detail: String },

    #[error("{msg} at {line}:{col}")]
    Parse { line: usize, col: usize, msg: String },
}

impl CurveError {
    pub fn is_truncation(&self) -> bool {
        matches!(self, CurveError::TruncationInsufficient(_))
    }
}

pub type Result<T> = std::result::Result<T, CurveError>;
