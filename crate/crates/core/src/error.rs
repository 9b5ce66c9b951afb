use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A pair of vertices whose counts disagree with the value seen first on the
/// same distance class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("malformed JSON graph: {0}")]
    Json(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not regular")]
    NotRegular,

    #[error("unknown catalog graph `{0}`")]
    UnknownCatalog(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} is not constant at distance {distance}; witness pair {witness}")]
    ConstancyViolation {
        what: String,
        distance: usize,
        witness: Witness,
    },

    #[error("eigenvalue clustering is ambiguous: gap {gap:e} lies between tolerance {tolerance:e} and ten times it")]
    AmbiguousClustering { gap: f64, tolerance: f64 },

    #[error("spectrum has {clusters} clusters but the minimal polynomial has degree {expected}; tighten the grouping tolerance")]
    ClusterMismatch { clusters: usize, expected: usize },

    #[error("numerical residual {residual:e} exceeds tolerance {tolerance:e} ({what})")]
    Residual {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("exact and spectral walk-regularity orders disagree: exact {exact:?}, spectral {spectral:?}")]
    OracleDisagreement {
        exact: Option<usize>,
        spectral: Option<usize>,
    },

    #[error("vertex identification is not transitive: {a} ~ {b} ~ {c} but {a} !~ {c}")]
    NotAnEquivalence { a: usize, b: usize, c: usize },

    #[error("not a clique: vertices {0} and {1} are not adjacent")]
    NotAClique(usize, usize),

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn constancy(what: impl Into<String>, distance: usize, x: usize, y: usize) -> Self {
        Error::ConstancyViolation {
            what: what.into(),
            distance,
            witness: Witness { x, y },
        }
    }
}
