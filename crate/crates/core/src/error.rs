use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different semiring kernels ({left} vs {right})")]
    KernelMismatch { left: String, right: String },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("invalid semiring table: {0}")]
    InvalidTable(String),
    #[error("invalid element for kernel {kernel}: {detail}")]
    InvalidElement { kernel: String, detail: String },
    #[error("argument {value} is below the minimum {min}")]
    ArgumentTooSmall { value: usize, min: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("stage {stage} is outside the declared system (stages 0..{available})")]
    StageOutOfRange { stage: usize, available: usize },
    #[error("presentation is not unital at step {0}")]
    UnitalityViolation(usize),
    #[error("multiplicity matrix does not map the source sizes onto the target sizes")]
    NotUnital,
    #[error("negative multiplicity at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("carrier has {size} elements, limit is {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("semiring has order {order}, limit is {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("search space of {size} candidates exceeds the limit {limit}")]
    SearchLimitExceeded { size: u128, limit: u128 },
    #[error("malformed input: {0}")]
    Malformed(String),
}
