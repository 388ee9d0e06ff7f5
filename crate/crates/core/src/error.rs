use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("malformed complex: {0}")]
    MalformedComplex(String),

    #[error("resource limit: {what} in dimension {dimension} exceeds cap {cap}")]
    ResourceLimit {
        what: &'static str,
        dimension: usize,
        cap: usize,
    },

    #[error("map image leaves the subcomplex: `{vertex}` -> `{image}`")]
    Containment { vertex: String, image: String },

    #[error("map is not total: `{0}` has no image")]
    NotTotal(String),

    #[error("not a retraction: {0}")]
    NotRetraction(String),

    #[error("reduced homology of the subcomplex in dimension {dimension} is not Z: {found}")]
    NotRankOne { dimension: usize, found: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no qualifying disk for sphere pair {pair}: {reason}")]
    MissingSpherePair { pair: usize, reason: String },

    #[error(
        "retraction is not well defined at `{disk}`: candidates map to `{first}` and `{second}`"
    )]
    WellDefinedness {
        disk: String,
        first: String,
        second: String,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
