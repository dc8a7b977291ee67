use thiserror::Error;

/// Failure modes shared by every module.
///
/// `Input` and `Structural` errors are the caller's fault; `Contract` means an
/// operation was handed data violating its precondition or an internal
/// identity failed to hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("input error at `{path}`: {message}")]
    Input { path: String, message: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "interpolation in s is unstable for monomial `{monomial}` (first sample s = {s0}); \
         raise the starting sample"
    )]
    Interpolation { monomial: String, s0: u64 },
}

impl Error {
    pub fn input(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::Input { .. } => "input",
            Error::Contract(_) => "contract",
            Error::Interpolation { .. } => "interpolation",
        }
    }

    /// Field path for input errors, if any.
    pub fn path(&self) -> Option<&str> {
        match self {
            Error::Input { path, .. } => Some(path),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
