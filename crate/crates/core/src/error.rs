use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate root {0}")]
    DuplicateRoot(usize),
    #[error("graph has {0} vertices, more than the supported {1}")]
    TooManyVertices(usize, usize),
    #[error("density is undefined: every vertex is a root")]
    UndefinedDensity,
    #[error("{0} non-root vertices is too many for exhaustive subset enumeration")]
    TooManyNonRoots(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown tree kind `{0}`")]
    UnknownKind(String),
    #[error("invalid partial assignment: {0}")]
    InvalidAssignment(String),
    #[error("not a tree rooted at its leaves: {0}")]
    NotLeafRootedTree(String),
    #[error("tree T({s},{t},{s_prime}) is not balanced")]
    Unbalanced { s: u64, t: u64, s_prime: u64 },
    #[error("condition (1) fails for a/b = {a}/{b}")]
    ConditionOneFails { a: u64, b: u64 },
    #[error("invalid exponent query: {0}")]
    InvalidQuery(String),
    #[error("invalid sequence system: {0}")]
    InvalidSequences(String),
    #[error("invalid bipartite graph: {0}")]
    InvalidBipartite(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("n = {n} exceeds the solver cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("not enough usable points for a fit: {0}")]
    TooFewPoints(usize),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
