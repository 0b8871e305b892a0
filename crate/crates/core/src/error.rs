use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration value (qubit count, shot count, gains, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A circuit slot was left unbound, or a value vector had the wrong length.
    #[error("binding error: {0}")]
    Binding(String),

    /// A feature vector could not be encoded into a quantum state.
    #[error("encoding error: {0}")]
    Encoding(String),

    /// Input data is malformed (CSV structure, labels, categories).
    #[error("data error: {0}")]
    Data(String),

    #[error("optimizer aborted at iteration {iteration}: objective returned {value}")]
    NonFiniteObjective { iteration: usize, value: f64 },

    #[error("AUROC undefined: {0}")]
    UndefinedAuroc(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    /// Broken internal invariant; never caused by user input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 2 for internal faults, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}
