use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid Burge array: {0}")]
    InvalidBurgeArray(String),

    #[error("cell ({row}, {col}) is not the last cell of its row")]
    NotRowEnd { row: usize, col: usize },

    #[error("alphabet has {found} letters, expected {expected}")]
    AlphabetSize { expected: usize, found: usize },

    #[error("alphabet must be strictly increasing positive integers")]
    AlphabetNotIncreasing,

    #[error("shape {0} is not threshold")]
    NotThresholdShape(Partition),

    #[error("insertion of column ({top}, {bottom}) breaks semistandardness")]
    OutOfOrderInsertion { top: usize, bottom: usize },

    #[error("Burge array is not PV-free")]
    NotPvFree,

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
