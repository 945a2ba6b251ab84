use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),

    #[error("characteristic too small for symmetrization (p = {p}, d = {d})")]
    CharacteristicTooSmall { p: u32, d: u32 },

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: String,
        needed: String,
        limit: String,
    },

    #[error("parameter contract violated: {0}")]
    ContractViolated(String),

    #[error("dimension estimate did not stabilize")]
    Unstable,

    #[error("internal error: orthogonality violated")]
    OrthogonalityViolated,

    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precision(msg: impl Into<String>) -> Error {
    Error::InsufficientPrecision(msg.into())
}
