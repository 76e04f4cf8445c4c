use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a page needs at least one boundary component (got n = 0)")]
    NoBoundary,

    #[error("objects live on different surfaces")]
    SurfaceMismatch,

    #[error("edge index {0} does not exist on this spine")]
    NoSuchEdge(usize),

    #[error("boundary component {0} does not exist")]
    NoSuchBoundary(usize),

    #[error("marked point {0} does not exist")]
    NoSuchMarkedPoint(usize),

    #[error("curve is not simple: {0}")]
    NotSimple(String),

    #[error("arc endpoints are invalid: {0}")]
    BadArc(String),

    #[error("arcs must share both endpoints")]
    EndpointMismatch,

    #[error("relation hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
