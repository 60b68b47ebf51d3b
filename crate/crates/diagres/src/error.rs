use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("prime {0} is too small for this operation")]
    PrimeTooSmall(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("non-integral coefficient: {0}")]
    NonIntegralCoefficient(String),
    #[error("theta = {0} is not in S_c")]
    NotInS(i64),
    #[error("unit u = {0} is not invertible")]
    NonUnit(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("matrix has odd size {0}")]
    OddSize(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("projective dimension is finite for this input")]
    NotInfinite,
    #[error("crit identity failed: {0}")]
    CritFailed(String),
    #[error("no admissible relation shape found")]
    ShapeNotFound,
    #[error("projective dimension is infinite for this input")]
    NotFinite,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("hypothesis fails: {0}")]
    ConditionFails(String),
    #[error("{0} is divisible by n")]
    Divisible(u64),
    #[error("degree cutoff {0} exceeded")]
    CutoffExceeded(usize),
    #[error("not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("probe inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
