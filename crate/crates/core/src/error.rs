use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("edge endpoint {0} is not a vertex")]
    UnknownEndpoint(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("not a simple graph: {0}")]
    NotSimple(String),
    #[error("not a tree: {0}")]
    NotTree(String),
    #[error("graph is not connected: {0}")]
    Disconnected(String),
    #[error("root {0} is not a vertex")]
    BadRoot(String),
    #[error("hole {hole} is not a vertex of the outer operand {outer}")]
    MissingHole { hole: String, outer: String },
    #[error("inner operand {inner} contains the hole {hole}")]
    HoleInInner { hole: String, inner: String },
    #[error("operands share vertices: {0}")]
    OverlappingVertices(String),
    #[error("bijection domain does not match the vertex set of {0}")]
    DomainMismatch(String),
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("{0} is not a spanning tree of {1}")]
    NotSpanningTree(String, String),
    #[error("spanning-tree choice is missing root {0}")]
    MissingChoice(String),
    #[error("mixed vertex sets in a linear combination: {0}")]
    MixedVertexSets(String),
    #[error("element is not homogeneous in the grading: {0}")]
    Inhomogeneous(String),
    #[error("arity {arity} is outside the computed range 1..={max}")]
    ArityOutOfRange { arity: usize, max: usize },
    #[error("weight {weight} exceeds the bound {max}")]
    WeightOutOfRange { weight: usize, max: usize },
    #[error("{element} is not a basis element of {operad}")]
    NotInFamily { element: String, operad: String },
    #[error("malformed sample: {0}")]
    MalformedSample(String),
    #[error("invalid generator species: {0}")]
    InvalidSpecies(String),
    #[error("not a quadratic element at arity 3: {0}")]
    NotQuadratic(String),
    #[error("series composition needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
