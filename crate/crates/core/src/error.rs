use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different algebras or truncations.
    #[error("configuration error: {0}")]
    Config(String),
    /// Input outside the domain of an operation (wrong degree, not Maurer-Cartan, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed algebraic structure (missing differential, degree violation, ...).
    #[error("structural error: {0}")]
    Structural(String),
    /// Text input that could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A linear system had no solution; `witness` describes the unreduced residual.
    #[error("no solution at degree {degree}, length {length}: {witness}")]
    NoSolution {
        degree: i32,
        length: usize,
        witness: String,
    },
    /// A model builder could not complete.
    #[error("construction error: {0}")]
    Construction(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
