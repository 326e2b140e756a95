use alloc::string::String;

use crate::graph::VertexId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("input graph is disconnected")]
    DisconnectedInput,
    #[error("invalid anchor in component {component}: {reason}")]
    InvalidAnchor { component: usize, reason: String },
    #[error("{0} is not a cut vertex")]
    NotACutVertex(VertexId),
    #[error("input tree {index} has a black root")]
    RootColorViolation { index: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("matrix is not a projection (residual {0:e})")]
    NotAProjection(f64),
    #[error("magic unitary does not preserve the partitions")]
    PartitionNotPreserved,
    #[error("empty cell")]
    EmptyCell,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no block tree isomorphism exists")]
    NoWitness,
    #[error("operation undefined on {0}")]
    Degenerate(&'static str),
}
