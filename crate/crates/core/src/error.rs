use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: missing field: {field}")]
    MissingField { line: usize, field: &'static str },

    #[error("line {line}: invalid date {value:?} (expected YYYY-MM-DD)")]
    InvalidDate { line: usize, value: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate document id {id:?} on lines {first} and {second}")]
    DuplicateId { id: String, first: usize, second: usize },

    #[error("invalid date range: start {start} is after end {end}")]
    Range {
        start: chrono::NaiveDate,
        end: chrono::NaiveDate,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no documents in range")]
    NoDocuments,

    #[error("n-gram {0:?} does not occur in the analysis corpus; its score is undefined")]
    UndefinedScore(String),

    #[error("chi-squared requires a positive expected frequency, got {0}")]
    Domain(f64),

    #[error("term {term:?} appears in clusters {first:?} and {second:?}")]
    ClusterConflict {
        term: String,
        first: String,
        second: String,
    },

    #[error("cluster {0:?} has no members")]
    EmptyCluster(String),

    #[error("stem rule line {line}: {message}")]
    StemRule { line: usize, message: String },

    #[error("malformed series table: {0}")]
    Series(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
