use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("schemas differ")]
    SchemaMismatch,
    #[error("operation not supported for index kind {0}")]
    UnsupportedSchemaKind(String),
    #[error("schema is not symmetric")]
    NotSymmetric,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("operator has nonzero tail shift {0}")]
    NonzeroTail(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("result is not representable: {0}")]
    Unrepresentable(String),
    #[error("form does not match schema: {0}")]
    FormMismatch(String),
    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
