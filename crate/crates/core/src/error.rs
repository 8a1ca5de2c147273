use thiserror::Error;

use crate::dissection::BlockKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {values:?}: {reason}")]
    InvalidPartition { values: Vec<i64>, reason: String },

    #[error("cannot parse partition from {0:?}")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("block kind {0:?} is not allowed here")]
    UnsupportedBlockKind(BlockKind),

    #[error("partition {partition} is not in {class}")]
    NotInClass { partition: String, class: String },

    #[error("series would contain negative powers of q: {0}")]
    NegativeExponent(String),

    #[error("series with constant term {0} is not invertible over the integers")]
    NotInvertible(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
