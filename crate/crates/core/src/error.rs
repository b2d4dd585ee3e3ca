use std::path::PathBuf;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("unknown graph `{0}`")]
    UnknownGraph(String),
    #[error("invalid graph `{id}`: {}", violations.join("; "))]
    InvalidGraph { id: String, violations: Vec<String> },
    #[error("graph has {0} vertices; brute-force automorphism search is limited to 8")]
    TooManyVertices(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} is the root and has no shadow inequality")]
    RootVertex(usize),
    #[error("tetrahedron base {base:?} contains the apex {apex}")]
    BaseContainsApex { apex: usize, base: [usize; 3] },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("{0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(context: impl Into<String>, source: serde_json::Error) -> Self {
        Error::Json {
            context: context.into(),
            source,
        }
    }
}
