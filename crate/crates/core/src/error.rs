use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("missing value at row {row}, column `{column}`")]
    MissingValue { row: usize, column: String },

    #[error("duplicate column name `{0}`")]
    DuplicateColumnName(String),

    #[error("table has no data rows")]
    EmptyTable,

    #[error("decision column `{0}` not found")]
    DecisionColumnNotFound(String),

    #[error("id column `{0}` not found")]
    IdColumnNotFound(String),

    #[error("table has no condition attributes")]
    NoConditionAttributes,

    #[error("row {row} has {found} values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("attribute `{0}` is already in the set")]
    AttributeAlreadyInSet(String),

    #[error("partitions cover different universes ({left} vs {right} objects)")]
    UniverseMismatch { left: usize, right: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error(
        "inconsistent table: {conflicts} conflicting object pair(s), first is ({}, {})",
        first.0, first.1
    )]
    InconsistentTable {
        conflicts: usize,
        first: (usize, usize),
    },

    #[error("{count} condition attributes exceed the enumeration limit of {limit}")]
    TooManyAttributes { count: usize, limit: usize },

    #[error("greedy search stalled at step {step} with no candidate attributes left")]
    NoProgress { step: usize },

    #[error(
        "reduct does not determine the decision: block starting at object {first_object} is impure"
    )]
    IncompleteReduct { first_object: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("checksum mismatch for {path}: expected {expected}, found {found}")]
    ChecksumMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("dataset `{name}`: {source}")]
    Dataset {
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_dataset(self, name: &str) -> Self {
        Error::Dataset {
            name: name.to_string(),
            source: Box::new(self),
        }
    }
}
