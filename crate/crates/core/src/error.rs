use thiserror::Error;

/// Errors produced across the laboratory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    BitParse(char),

    #[error("a multiset needs at least two members, got {0}")]
    Cardinality(usize),

    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("incomplete search: {0}")]
    IncompleteSearch(String),

    #[error("instance error: {0}")]
    Instance(String),

    #[error("duplicate multiset at positions {first} and {second}")]
    DuplicateMultiset { first: usize, second: usize },

    #[error("verification input error: {0}")]
    VerificationInput(String),

    #[error("element {0} does not occur in the instance")]
    UnknownElement(String),

    #[error("no multiset containing {element} carries label {label}")]
    NotFound { element: String, label: usize },

    #[error("instance too large for exhaustive search: {0} vertices (limit {1})")]
    TooLarge(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate compressor: {0}")]
    DegenerateCompressor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
