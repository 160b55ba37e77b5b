use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("no element of {subgroup} lies strictly between {lo} and {hi}")]
    NoElement { subgroup: String, lo: String, hi: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("size {size} exceeds the cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("state is not H-valued: {0}")]
    NotHValued(String),

    #[error("law violated: {0}")]
    LawViolation(String),

    #[error("witness grid does not cover {0}; extend the grid")]
    GridExtension(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
