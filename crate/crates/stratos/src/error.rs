//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by model construction, validation, and queries.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown state id `{0}`")]
    UnknownState(String),
    #[error("unknown history `{0}`")]
    UnknownHistory(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),
    #[error("time {0} outside the time axis 0..={1}")]
    TimeOutOfRange(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("dangling reference at {pointer}: {message}")]
    DanglingReference { pointer: String, message: String },
    #[error("partition violation in ensemble for `{agent}`: {message}")]
    PartitionViolation { agent: String, message: String },
    #[error("information set `{0}` is not thin: {1}")]
    NotThin(String, String),

    #[error("incomplete joint choice: no selection for choice point `{0}` owned by `{1}`")]
    IncompleteChoice(String, String),
    #[error("ill-formed ensemble: {0}")]
    IllFormedEnsemble(String),
    #[error("incomplete strategy for `{agent}`: no alternative assigned at cell `{cell}`")]
    IncompleteStrategy { agent: String, cell: String },
    #[error("strategy space for `{agent}` has {size} members, exceeding the enumeration cap {cap} (set STRATOS_STRATEGY_CAP to raise it)")]
    EnumerationLimit { agent: String, size: u128, cap: u128 },

    #[error("missing intention: no plan state declared for {0}")]
    MissingIntention(String),
    #[error("self plan state of `{agent}` varies within information cell `{cell}`")]
    InconsistentSelfPlan { agent: String, cell: String },
    #[error("undefined conditional: zero probability mass on {0}")]
    UndefinedConditional(String),

    #[error("message rejected: assertion `{0}` is inconsistent with the information state")]
    RejectedMessage(String),
    #[error("directive rejected: no strategy in the plan state forces `{0}`")]
    RejectedDirective(String),
    #[error("no pragmatics profile entry for token `{token}` of agent `{agent}`")]
    UnknownToken { agent: String, token: String },

    #[error("syntax error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid json in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
