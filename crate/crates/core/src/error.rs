//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violated an operation precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A scene file record failed validation. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("training failed: {0}")]
    Training(String),

    /// A star graph or spoke set had nothing to rank.
    #[error("no candidate objects")]
    NoCandidates,

    /// Guard against exponential blowup in the exact Shapley oracle.
    #[error("cost guard: {0}")]
    CostGuard(String),

    /// A backward pass was handed a cache produced by an older model state.
    #[error("stale forward cache: model parameters changed since the forward pass")]
    StaleCache,

    #[error("missing input: {0}")]
    MissingInput(String),

    /// Pipeline stage failure wrapper; keeps the failing stage name visible.
    #[error("stage '{stage}' failed: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl Error {
    pub fn in_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
