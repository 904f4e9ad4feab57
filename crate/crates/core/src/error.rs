use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operand shapes do not fit the operation.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A value lies outside the domain the operation accepts (for example a
    /// `+inf` entry handed to a max-plus product).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not invertible (not a generalized permutation matrix)")]
    NotInvertible,

    /// No permutation has finite weight.
    #[error("infeasible: no permutation has finite weight")]
    Infeasible,

    /// The Kleene star does not exist because a cycle has positive weight.
    #[error("kleene star diverges: maximum cycle mean is positive")]
    Divergent,

    /// A brute-force reference routine was asked for a size it refuses.
    #[error("oracle size guard: order {order} exceeds limit {limit}")]
    OracleSize { order: usize, limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}
