use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the analysis pipeline and the retrieval adapters.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("duplicate document id `{0}`")]
    DuplicateId(String),

    #[error("query has no terms after analysis")]
    EmptyQuery,

    #[error("invalid layer: {0}")]
    InvalidLayer(String),

    #[error("clustering needs at least 2 documents, got {0}")]
    TooFewDocuments(usize),

    #[error("inconsistent layer `{layer}`: {reason}")]
    InconsistentLayer { layer: String, reason: String },

    #[error("no such engine `{0}`")]
    NoSuchEngine(String),

    #[error("{path}:{line}: {msg}")]
    AdapterFormat {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}:{line}: {msg}")]
    CorpusFormat {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
