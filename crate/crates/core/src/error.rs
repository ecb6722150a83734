use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("residual y-variables in element that should be pure: {0}")]
    ResidualY(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid JSON document: {0}")]
    Json(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: usize, range: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            value: value as i64,
            range: range.into(),
        }
    }
}
