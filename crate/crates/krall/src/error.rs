use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KrallError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("pole at s = 0")]
    Pole,
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("root multiplicity {0} is not supported (expected 1 or 2)")]
    Multiplicity(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vanishing determinant: {0}")]
    Degenerate(String),
    #[error("division by zero: {0}")]
    ZeroDivisor(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, KrallError>;
