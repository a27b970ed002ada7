use thiserror::Error;

/// Errors reported to clients. [`ServiceError::code`] gives the wire code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ServiceError {
    #[error("no such session `{0}`")]
    NoSuchSession(String),
    #[error("no such engine `{0}`")]
    NoSuchEngine(String),
    #[error("document `{0}` is not in the current result")]
    NoSuchDocument(String),
    #[error("query has no terms after analysis")]
    EmptyQuery,
    #[error("session limit of {0} reached")]
    ServerBusy(usize),
    #[error("no search has been run in this session")]
    NoSearchYet,
    #[error("engine `{engine}`: {msg}")]
    AdapterFormat { engine: String, msg: String },
    #[error("engine `{engine}`: {msg}")]
    Adapter { engine: String, msg: String },
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::NoSuchSession(_) => "no-such-session",
            ServiceError::NoSuchEngine(_) => "no-such-engine",
            ServiceError::NoSuchDocument(_) => "no-such-document",
            ServiceError::EmptyQuery => "empty-query",
            ServiceError::ServerBusy(_) => "server-busy",
            ServiceError::NoSearchYet => "no-search-yet",
            ServiceError::AdapterFormat { .. } => "adapter-format",
            ServiceError::Adapter { .. } => "adapter-error",
            ServiceError::BadRequest(_) => "bad-request",
            ServiceError::Internal(_) => "internal",
        }
    }

    /// Attaches engine context to an error raised while searching.
    pub fn from_search(engine: &str, err: docmap_core::Error) -> Self {
        use docmap_core::Error as E;
        match err {
            E::NoSuchEngine(id) => ServiceError::NoSuchEngine(id),
            E::EmptyQuery => ServiceError::EmptyQuery,
            e @ E::AdapterFormat { .. } => ServiceError::AdapterFormat {
                engine: engine.to_string(),
                msg: e.to_string(),
            },
            e @ E::Io { .. } => ServiceError::Adapter {
                engine: engine.to_string(),
                msg: e.to_string(),
            },
            e => ServiceError::Internal(format!("engine `{engine}`: {e}")),
        }
    }
}

pub type Result<T, E = ServiceError> = std::result::Result<T, E>;
