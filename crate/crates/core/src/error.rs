use thiserror::Error;

/// Errors produced by graph construction, matching handling and the
/// verification drivers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {n} is outside the supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("position {i} is outside 1..={n}")]
    PositionOutOfRange { i: usize, n: usize },

    #[error("vertex {vertex} is outside the {n}-dimensional vertex set")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("label dimensions disagree: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid edge {u}-{v}: {reason}")]
    InvalidEdge { u: String, v: String, reason: &'static str },

    #[error("{u} {v} is not an edge of FQ_{n}")]
    NotAnFqEdge { u: String, v: String, n: usize },

    #[error("edge {0} is not present in the graph")]
    EdgeNotPresent(String),

    #[error("edges share endpoint {0}")]
    SharedEndpoint(String),

    #[error("not a perfect matching: {0}")]
    NotAPerfectMatching(String),

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("matching is {0}; FQ_n minus it is isomorphic to Q_n, so no witness exists")]
    NotMixed(String),

    #[error("{what} needs at most {limit} vertices, graph has {vertices}")]
    ExhaustionLimitExceeded { what: &'static str, vertices: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("verification failed for {subject}: {detail}")]
    VerificationFailed { subject: String, detail: String },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// True for rejections caused by a configured resource guard rather than
    /// by malformed input.
    pub fn is_resource_guard(&self) -> bool {
        match self {
            Error::ExhaustionLimitExceeded { .. } => true,
            Error::DimensionOutOfRange { n, max, .. } => n > max,
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
