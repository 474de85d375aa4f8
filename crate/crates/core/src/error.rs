use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Law violations are never errors: they are reported as content of a
/// report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown or unsupported field spec `{0}`")]
    FieldSpec(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("transversality violated: {0}")]
    NotTransversal(String),
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("gram matrix is neither hermitian nor skew-hermitian")]
    FormSymmetry,
    #[error("operation needs a finite field, got {0}")]
    InfiniteField(String),
    #[error("ambient dimension {0} exceeds the enumeration bound {1}")]
    BoundExceeded(usize, usize),
    #[error("2 is not invertible in characteristic 2")]
    Characteristic2,
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
