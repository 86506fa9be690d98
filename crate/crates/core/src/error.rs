use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("k must be a power of two >= {min}, got {k}")]
    InvalidRoot { k: usize, min: usize },

    #[error("invalid value for `{field}`: {reason}")]
    InvalidField { field: String, reason: String },

    #[error("missing required field `{0}`")]
    MissingField(String),

    #[error("enumeration needs {work} predicate evaluations, budget is {budget}")]
    WorkBudget { work: u128, budget: u128 },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed csv at line {line}: {reason}")]
    Csv { line: usize, reason: String },

    #[error("curve has no checkpoints")]
    EmptyCurve,
}

impl Error {
    pub(crate) fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidField {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Checks that `k = 2^m` with `k >= min`.
pub(crate) fn check_root(k: usize, min: usize) -> Result<()> {
    if k >= min && k.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidRoot { k, min })
    }
}
