use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("I/O error: {0}")]
    Stream(#[from] std::io::Error),

    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input is empty")]
    EmptyInput,

    #[error("node id {id} out of range for a graph of {node_count} nodes")]
    NodeOutOfRange { id: u64, node_count: usize },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("partition map is empty")]
    EmptyPartition,

    #[error("partition map covers {got} nodes but the graph has {expected}")]
    PartitionLength { expected: usize, got: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("lattice with dim {dim} and side {side} overflows the addressable node range")]
    LatticeOverflow { dim: u32, side: u32 },

    #[error("invalid estimator argument: {0}")]
    InvalidArgument(String),

    #[error("requested {requested} samples but only {eligible} eligible origins")]
    TooManySamples { requested: usize, eligible: usize },

    #[error("graph invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
