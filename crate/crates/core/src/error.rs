use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Sub-steps of a simulated month, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubStep {
    ReleaseTokens,
    Revenue,
    NodeDecisions,
    GrowthCapital,
    Price,
    Record,
}

impl fmt::Display for SubStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SubStep::ReleaseTokens => "release-tokens",
            SubStep::Revenue => "revenue",
            SubStep::NodeDecisions => "node-decisions",
            SubStep::GrowthCapital => "growth-capital",
            SubStep::Price => "price",
            SubStep::Record => "record",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("llm backend unavailable after {attempts} attempt(s): {message}")]
    BackendUnavailable { attempts: u32, message: String },

    #[error("llm protocol error (status {status}): {body}")]
    Protocol { status: u16, body: String },

    #[error("month {month}, sub-step {substep}: {source}")]
    Step {
        month: u32,
        substep: SubStep,
        #[source]
        source: Box<Error>,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub(crate) fn at(self, month: u32, substep: SubStep) -> Self {
        match self {
            e @ Error::Step { .. } => e,
            other => Error::Step {
                month,
                substep,
                source: Box::new(other),
            },
        }
    }

    /// True for errors caused by user input (config, arguments) rather than by
    /// something that went wrong while the simulation was running.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::Config(_) | Error::Json(_) | Error::Csv(_)
        )
    }
}
