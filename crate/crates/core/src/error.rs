use thiserror::Error;

/// Errors raised while building instances or running solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid article id {0:?}")]
    InvalidId(String),

    #[error("duplicate article {0}")]
    DuplicateArticle(String),

    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(String, String),

    #[error("self-citation {0} -> {0}")]
    SelfLoop(String),

    #[error("unknown article {0}")]
    UnknownArticle(String),

    #[error("part references non-owned article {0}")]
    NotOwned(String),

    #[error("article {0} appears in more than one part")]
    OverlappingParts(String),

    #[error("empty part")]
    EmptyPart,

    #[error("missing `{0}` directive")]
    Missing(&'static str),

    #[error("budget k given for the plain variant")]
    UnexpectedBudget,

    #[error("partition is not a refinement of the profile: {0}")]
    NotARefinement(String),

    #[error("{solver} does not support {what}")]
    Unsupported { solver: &'static str, what: String },

    #[error("{what}: size {size} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("invalid reduction input: {0}")]
    InvalidReduction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
