use std::io;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) already present")]
    EdgeExists(usize, usize),

    #[error("no such edge ({0}, {1})")]
    EdgeMissing(usize, usize),

    #[error("vertex {vertex} is not isolated (degree {degree})")]
    VertexNotIsolated { vertex: usize, degree: usize },

    #[error("operation requires a graph with at least one vertex")]
    EmptyGraph,

    #[error("operation requires a graph with at least one edge")]
    NoEdges,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph spec parse error at position {position}: {message}")]
    SpecParse { position: usize, message: String },

    #[error("need at least {needed} readable graphs, found {found}")]
    TooFewGraphs { needed: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("graph has {n} vertices, above the dense eigensolver cap of {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("eigensolver failed to converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 usage/parse, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SpecParse { .. } | Error::InvalidParameter(_) | Error::InvalidGrid(_) => 1,
            Error::NoConvergence { .. } | Error::Numerical(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
