use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex subset over {found} vertices used with a graph on {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("{what} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("bipartition is unbalanced ({left} vs {right})")]
    Unbalanced { left: usize, right: usize },
    #[error("pattern graph is not connected")]
    PatternDisconnected,
    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
    #[error("infeasible pinning: {0}")]
    InfeasiblePins(String),
    #[error("vertex {0} is not in the red set")]
    RootNotRed(usize),
    #[error("mixing did not reach 1/4 within {0} steps")]
    NoConvergence(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by a size cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
