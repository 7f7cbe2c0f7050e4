use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: bad dimensions, out-of-range indices, empty sets.
    #[error("input error: {0}")]
    Input(String),

    /// A game file could not be parsed. Positions are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Exhaustive search refused because the game exceeds the configured guard.
    #[error("capacity error: {rows}x{cols} game exceeds the enumeration limit of {max_rows}x{max_cols}")]
    Capacity {
        rows: usize,
        cols: usize,
        max_rows: usize,
        max_cols: usize,
    },

    /// A result that a theorem guarantees did not hold. Always a bug witness.
    #[error("property violation: {0}")]
    PropertyViolation(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
