use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("no path from {s} to {t}")]
    NoPath { s: Vertex, t: Vertex },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid sequence at step {step}: {msg}")]
    InvalidSequence { step: usize, msg: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("assignment does not satisfy clause {clause}")]
    Unsatisfied { clause: usize },

    #[error("Piran graph contains a cycle, so it is not even-hole-free")]
    NotEvenHoleFree,

    #[error("graph contains an induced P4, so it is not a cograph")]
    NotCograph,
}

pub type Result<T> = std::result::Result<T, Error>;
