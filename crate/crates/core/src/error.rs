use thiserror::Error;

use crate::graph::{Edge, VertexId};
use crate::model::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("graph has no vertices")]
    EmptyGraph,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("model set violates {} structural rule(s)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("vertex {0} is not an internal vertex")]
    NotInternal(VertexId),
    #[error("noise is not allowed in the measurement-selection setting (p = {0})")]
    NoiseNotAllowed(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("no edges to cover")]
    EmptyTarget,
    #[error("tree {from} is not mergeable to tree {into}")]
    NotMergeable { from: usize, into: usize },
    #[error("index {index} out of range for {len} trees")]
    Index { index: usize, len: usize },
    #[error("invalid covering: {0}")]
    InvalidCovering(String),
    #[error("malformed characteristic matrix: {0}")]
    Matrix(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AllocationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("no identifiable allocation exists: {0}")]
    Unsatisfiable(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("target edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
