use std::path::PathBuf;

use thiserror::Error;

use crate::exgraph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("size mismatch: expected {expected} got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("non-finite value at voxel {voxel} of time step {t}")]
    NonFinite { t: usize, voxel: usize },

    #[error("inconsistent dims: {0}")]
    InconsistentDims(String),

    #[error("inconsistent time steps: {0}")]
    InconsistentTime(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("need at least 2 time steps")]
    TooFewSteps,

    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
