use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("N must be >= 2 (got {0})")]
    InvalidOrder(usize),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("singular argument: {0}")]
    Singular(String),
    #[error("flattening constraint violated (residual {0:e})")]
    Constraint(f64),
    #[error("fusion constraint violated (residual {0:e})")]
    FusionConstraint(f64),
    #[error("log-parameter {0} does not match its character")]
    RootMismatch(String),
    #[error("crossing is pinched: zeta0 of region {0} is an integer")]
    Pinched(char),
    #[error("crossing is not pinched")]
    NotPinched,
    #[error("inadmissible coloring at crossing {0}")]
    Inadmissible(usize),
    #[error("inconsistent crossing data: {0}")]
    Inconsistent(String),
    #[error("shift must be an integer: {0}")]
    NonInteger(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("generator index {0} out of range for width {1}")]
    GeneratorRange(i64, usize),
    #[error("move is not eligible: {0}")]
    Ineligible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
