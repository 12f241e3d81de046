use thiserror::Error;

/// Errors raised by graph construction, rate algebra, basis completion and file IO.
///
/// Vertex indices carried in variants are 1-based, as everywhere in the public API.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not connected")]
    NotConnected,
    #[error("spanning tree does not match graph: {0}")]
    TreeMismatch(String),
    #[error("graph has {n} vertices, above the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("step {0} -> {1} is not an edge of the graph")]
    NotAWalk(usize, usize),
    #[error("walk does not return to its starting vertex")]
    NotClosed,
    #[error("entry ({i}, {j}) is invalid: {reason}")]
    InvalidEntry { i: usize, j: usize, reason: String },
    #[error("exponential of entry ({i}, {j}) = {value} is not representable")]
    Overflow { i: usize, j: usize, value: f64 },
    #[error("graph is not complete")]
    NotComplete,
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("entries do not form a basis: {0}")]
    NotABasis(String),
    #[error("matrix violates the no-arbitrage condition (|log gain| = {0:e})")]
    NotNoArbitrage(f64),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("basis of perturbation differs from basis of operator")]
    SpecMismatch,
    #[error("operands are defined over different graphs")]
    GraphMismatch,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reciprocal rates for {src} -> {dst} disagree: product {product} deviates from 1")]
    ReciprocalConflict {
        src: String,
        dst: String,
        product: f64,
    },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
