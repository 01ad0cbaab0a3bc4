use thiserror::Error;

/// Errors produced by the simulation engine.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A distribution or strategy parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An experiment configuration is unusable as a whole.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A metric is undefined for the given trace (e.g. zero agent-steps).
    #[error("undefined metric: {0}")]
    UndefinedMetric(&'static str),

    /// A sweep cell failed; identifies the cell so the caller can report it.
    #[error("sweep cell [{cell}] failed: {source}")]
    SweepCell {
        cell: String,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
