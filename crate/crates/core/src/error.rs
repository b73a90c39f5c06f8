use thiserror::Error;

/// Failure modes shared by every module of the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("budget exceeded for {what}: needs {required}, limit {limit}")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("genus not computed: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    pub(crate) fn precondition(what: impl Into<String>) -> Self {
        Error::Precondition(what.into())
    }
}

/// Returns a budget error when `required` exceeds `limit`.
pub(crate) fn check_budget(what: &'static str, required: u128, limit: u64) -> Result<()> {
    if required > limit as u128 {
        Err(Error::Budget {
            what,
            required,
            limit,
        })
    } else {
        Ok(())
    }
}
