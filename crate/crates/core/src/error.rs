use thiserror::Error;

use crate::geometry::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("retry budget of {budget} exhausted ({what})")]
    RetryBudget { what: &'static str, budget: usize },

    #[error("degenerate projection along {axis}: {detail}")]
    DegenerateProjection { axis: char, detail: String },

    #[error("cycles share vertex {0}")]
    SharedVertex(usize),

    #[error("edge {0} is not part of the diagram")]
    MissingEdge(Edge),

    #[error("edges {0} and {1} have no crossing to twist next to")]
    NoAdjacentCrossing(Edge, Edge),

    #[error("expected {expected} component(s), got {got}")]
    ComponentCount { expected: usize, got: usize },

    #[error("component index {index} out of range ({len} components)")]
    ComponentIndex { index: usize, len: usize },

    #[error("malformed Gauss code: {0}")]
    MalformedCode(String),

    #[error("invalid D4 pattern: {0}")]
    InvalidD4(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search or construction that is guaranteed to succeed did not.
    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),
}
