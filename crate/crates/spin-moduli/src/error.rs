use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("zero has trivial square root; use sqrt_in_ext")]
    ZeroSquareCheck,
    #[error("degenerate direction")]
    DegenerateDirection,
    #[error("element is not a square in F_q; use the quadratic extension")]
    NoRationalRoot,
    #[error("graph is not connected")]
    Disconnected,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("support has odd degree on a component: {0}")]
    OddComponentDegree(String),
    #[error("expected a curve with two smooth components, no loops and delta >= 2")]
    NotTwoComponentShape,
    #[error("D_X smooth, no local model needed")]
    SmoothLocalModel,
    #[error("direction entry is zero at node {0}")]
    ZeroDirectionEntry(usize),
    #[error("twister tuple arity mismatch: expected {expected}, got {got}")]
    TwisterArity { expected: usize, got: usize },
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("parameter out of supported bounds: {0}")]
    Bounds(String),
    #[error("invalid curve file: {0}")]
    CurveFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
