//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range (dimension {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-binary value at {context}: {value}")]
    NonBinary { context: String, value: String },

    #[error("enumeration limit: p = {p} exceeds the 2^p cap of p = {max}")]
    EnumerationLimit { p: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("objective became non-finite at iteration {iteration}")]
    NonFiniteObjective { iteration: usize },

    #[error("category {index}: {source}")]
    Category {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("bootstrap replicate {replicate}: {source}")]
    Replicate {
        replicate: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error at {locus}: {message}")]
    Parse { locus: String, message: String },

    #[error("imputation on bill {bill}: party {party} has no non-missing votes")]
    NoPartyVotes { bill: String, party: String },

    #[error("category {label} is empty after filtering")]
    EmptyCategory { label: String },

    #[error("pipeline stage {stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attach a category index to an error bubbling out of a per-category fit.
    pub fn in_category(self, index: usize) -> Error {
        Error::Category {
            index,
            source: Box::new(self),
        }
    }

    /// Attach a bootstrap replicate index.
    pub fn in_replicate(self, replicate: usize) -> Error {
        Error::Replicate {
            replicate,
            source: Box::new(self),
        }
    }

    /// Attach a pipeline stage name.
    pub fn in_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
