use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Core(#[from] mildcalc_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            file: file.to_string(),
            line,
            msg: msg.into(),
        }
    }

    /// Configuration and input problems map to exit code 2.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Config(_) | Error::Json(_))
            || matches!(
                self,
                Error::Core(
                    mildcalc_core::Error::InvalidGrid(_)
                        | mildcalc_core::Error::StrideMismatch { .. }
                        | mildcalc_core::Error::GridMismatch { .. }
                        | mildcalc_core::Error::LengthMismatch { .. }
                        | mildcalc_core::Error::NonFinite(_)
                        | mildcalc_core::Error::ZeroWindow
                        | mildcalc_core::Error::TooLarge(_)
                        | mildcalc_core::Error::InvalidArgument(_)
                        | mildcalc_core::Error::IndexOutOfRange { .. }
                )
            )
            || matches!(self, Error::Io { .. })
    }
}
