use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("hypergraph must have at least one vertex")]
    NoVertices,
    #[error("vertex {0} has degree zero")]
    IsolatedVertex(usize),
    #[error("hyperedge {0} has no members")]
    EmptyEdge(usize),
    #[error("hyperedge {edge} lists vertex {vertex} more than once")]
    DuplicateMember { edge: usize, vertex: usize },
    #[error("hyperedge {edge} has non-positive or non-finite weight {weight}")]
    NonPositiveWeight { edge: usize, weight: f64 },
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("conductance is undefined for the empty set and the full vertex set")]
    DegenerateSubset,
    #[error("subset is empty")]
    EmptySubset,
    #[error("malformed input at line {0}")]
    MalformedLine(usize),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector is not a distribution")]
    NotADistribution,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("state became non-finite at step {0}; the step size is too large")]
    NonFiniteState(usize),
    #[error("hyperedge {0} does not have exactly two members")]
    NotAGraph(usize),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("instance too large for this routine (n = {0})")]
    TooLarge(usize),
    #[error("expansion needs {needed} edges, budget is {budget}")]
    ExpansionBudgetExceeded { needed: u64, budget: u64 },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
