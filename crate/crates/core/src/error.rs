use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// Cap variants (`OrbitCap`, `BallCap`, `CosetCap`, `NodeBudget`) mean the
/// instance is too large for the configured limits, not that the input is
/// wrong.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} is out of range")]
    VertexIndex(usize),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid weight {weight} between `{x}` and `{y}`")]
    InvalidWeight { x: String, y: String, weight: u32 },
    #[error("`{0}` and `{1}` are not joined by an edge")]
    NotAnEdge(String, String),
    #[error("the vertex set must be a proper subset of the graph")]
    NotProperSubset,
    #[error("graph is not right-angled: m({x},{y}) = {weight}")]
    NotRightAngled { x: String, y: String, weight: u32 },

    #[error("braid orbit exceeded {cap} words (raise COXCAY_MAX_ORBIT)")]
    OrbitCap { cap: usize },
    #[error("coset exploration exceeded {cap} elements")]
    CosetCap { cap: usize },
    #[error("ball exceeded {cap} vertices (raise COXCAY_MAX_BALL)")]
    BallCap { cap: usize },
    #[error("search exceeded {cap} backtracking nodes (raise COXCAY_MAX_NODES)")]
    NodeBudget { cap: u64 },

    #[error("not a permutation of the vertex set: {0}")]
    InvalidPermutation(String),
    #[error("permutation does not preserve weights")]
    NotWeightPreserving,

    #[error("vertex `{0}` does not lie in the ball")]
    NotInBall(String),
    #[error("local action at `{0}` needs its whole neighbourhood in the domain")]
    InsufficientDomain(String),
    #[error("extracted local action at `{0}` is not a weight-preserving bijection")]
    CorruptLocalAction(String),
    #[error("configuration is not defined on every ball vertex")]
    ConfigurationSize,
    #[error("synthesis is not well defined at `{0}`")]
    NotWellDefined(String),
    #[error("image of `{0}` leaves the ball")]
    ImageEdgeMissing(String),
    #[error("synthesized map is not injective")]
    NotInjective,
    #[error("synthesized map does not preserve the edge `{0}`-`{1}`")]
    EdgeNotPreserved(String, String),
    #[error("local action at `{0}` disagrees with the configuration")]
    LocalActionMismatch(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("invalid separating data: {0}")]
    GoodSeparatingSet(String),
    #[error("`{0}` is not a coset key")]
    NotACosetKey(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
