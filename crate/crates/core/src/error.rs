use thiserror::Error;

use crate::graph::{ArcId, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("node {node} out of range (graph has {count} nodes)")]
    NodeOutOfRange { node: usize, count: usize },

    #[error("degree property violated at node {node}: in-degree {indeg}, out-degree {outdeg}")]
    DegreeProperty {
        node: NodeId,
        indeg: usize,
        outdeg: usize,
    },

    #[error("loop property violated: arcs {arc} and {mate_arc} both join node {node} to its mate")]
    LoopProperty {
        node: NodeId,
        arc: ArcId,
        mate_arc: ArcId,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("oracle refuses instance with {arcs} arcs (cap {cap})")]
    OracleCap { arcs: usize, cap: usize },

    #[error("infeasible generator request: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
