use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}", path = path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write `{path}`: {source}", path = path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    /// Malformed JSON or a schema violation caught by serde.
    #[error("{origin}: {msg}")]
    Parse { origin: String, msg: String },
    /// Well-formed JSON whose content does not make sense.
    #[error("{field}: {msg}")]
    Schema { field: String, msg: String },
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: qsys_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn schema(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Self::Schema {
            field: field.into(),
            msg: msg.into(),
        }
    }

    pub fn core(context: impl Into<String>, source: qsys_core::Error) -> Self {
        Self::Core {
            context: context.into(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Attaches a field path to core errors.
pub(crate) trait Context<T> {
    fn ctx(self, context: impl FnOnce() -> String) -> CliResult<T>;
}

impl<T> Context<T> for qsys_core::Result<T> {
    fn ctx(self, context: impl FnOnce() -> String) -> CliResult<T> {
        self.map_err(|e| CliError::core(context(), e))
    }
}
