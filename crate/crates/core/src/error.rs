use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),

    #[error("edge {index} has {found} vertices, expected {expected}")]
    EdgeArity {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("vertex {vertex} is out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("edge {index} repeats a vertex")]
    RepeatedVertex { index: usize },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<u32>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{op} requires a {expected}-uniform hypergraph, got r = {found}")]
    Uniformity {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("clique size {0} is outside the supported range 2..=5")]
    CliqueSize(usize),

    #[error("{0:?} does not span a clique")]
    NotAClique(Vec<u32>),

    #[error("pair {pair:?} is not contained in {set:?}")]
    PairNotContained { pair: [u32; 2], set: Vec<u32> },

    #[error("{0:?} is not in the shadow")]
    NotInShadow(Vec<u32>),

    #[error("edge {0:?} is not an edge of the host hypergraph")]
    EdgeNotInHost(Vec<u32>),

    #[error("the shadow is empty")]
    EmptyShadow,

    #[error("the hypergraph has no vertices")]
    NoVertices,

    #[error("at least {min} vertices required, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("clique {clique:?} has no extension to a larger clique (pair {pair:?})")]
    NoExtension { pair: [u32; 2], clique: Vec<u32> },

    #[error(
        "pair {pair:?} has codegree {codegree}, threshold requires more than {bound_num}/{bound_den}"
    )]
    BelowThreshold {
        pair: [u32; 2],
        codegree: usize,
        bound_num: usize,
        bound_den: usize,
    },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("point violates constraints: {}", .0.join("; "))]
    InfeasiblePoint(Vec<String>),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("space barrier bound inapplicable: edge {0:?} covers no within-part pair")]
    BoundInapplicable(Vec<u32>),

    #[error("codegree floor {floor} exceeds the maximum possible codegree {max}")]
    FloorTooLarge { floor: usize, max: usize },

    #[error("outcome does not match problem: {0}")]
    Mismatch(String),
}

impl Error {
    /// Violated hypotheses of an operation, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NoExtension { .. }
                | Error::BelowThreshold { .. }
                | Error::TooFewVertices { .. }
                | Error::Uniformity { .. }
                | Error::Domain { .. }
                | Error::FloorTooLarge { .. }
                | Error::BoundInapplicable(_)
        )
    }
}
