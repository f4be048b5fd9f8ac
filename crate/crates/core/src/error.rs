use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed domain object: bad permutation, sign out of range, mismatched bounds.
    #[error("validation error: {0}")]
    Validation(String),

    /// Pattern-literal syntax error. `position` is the byte offset in the input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A desk-scale guard tripped.
    #[error("capacity exceeded: {what} ({value} > limit {limit})")]
    Capacity {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    /// Argument outside the range an operation is defined for.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular division: divisor has zero constant term")]
    SingularDivision,

    /// n!·[x^n]f was not an integer.
    #[error("integrality violation at n={n}: {value}")]
    Integrality { n: usize, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
