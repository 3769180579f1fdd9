use thiserror::Error;

#[derive(Debug, Error)]
pub enum CwcError {
    #[error("invalid field GF({p}^{m}): {reason}")]
    InvalidField { p: u32, m: u32, reason: String },

    #[error("field element {index} is out of range for a field of size {q}")]
    ElementOutOfRange { index: usize, q: usize },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    /// A construction hypothesis failed; `condition` quotes the requirement.
    #[error("hypothesis violated: requires {condition} ({detail})")]
    Hypothesis { condition: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular curve: discriminant is zero")]
    SingularCurve,

    #[error("duplicate codewords at indices {0} and {1}")]
    DuplicateWords(usize, usize),

    #[error("search limit reached: {0}")]
    SearchLimit(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CwcError> = std::result::Result<T, E>;

pub(crate) fn hypothesis(condition: &'static str, detail: impl Into<String>) -> CwcError {
    CwcError::Hypothesis { condition, detail: detail.into() }
}
