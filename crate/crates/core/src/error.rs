use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("term of degree zero has no variables")]
    NoVariables,

    #[error("at least one variable is required")]
    NoAmbientVariables,

    #[error("too many variables: {0} (at most {max} supported)", max = crate::term::MAX_VARS)]
    TooManyVariables(usize),

    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("term {0} is not in the support")]
    NotInSupport(String),

    #[error("duplicate term {0} in the support")]
    DuplicateTerm(String),

    #[error("support is not the full degree-{degree} slice: {reason}")]
    NotFullSlice { degree: u32, reason: String },

    #[error("operation requires a full degree-slice division")]
    NotSliceKind,

    #[error("invalid division: {0}")]
    InvalidDivision(String),

    #[error("no involutive divisor for {0}")]
    NoInvolutiveDivisor(String),

    #[error("terms of mixed degree")]
    MixedDegrees,

    #[error("unknown graph node {0}")]
    UnknownNode(String),

    #[error("graphs have different node sets")]
    NodeMismatch,

    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("conflict: {0}")]
    Conflict(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
