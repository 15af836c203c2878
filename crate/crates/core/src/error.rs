use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size guard exceeded: {what} = {actual} exceeds limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: u64,
        limit: u64,
    },

    /// The kernel condition fails: some nonzero element of B lies in every
    /// kernel from this index on.
    #[error("sequence is not faithful: kernel intersection is nontrivial from index {index}")]
    NotFaithful { index: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("epimorphism does not recur in the period")]
    NotRecurrent,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("points are not cofinal")]
    NotCofinal,

    #[error("points are not compatible")]
    NotCompatible,

    #[error("graph has more than one out-edge with the same label at a vertex")]
    NondeterministicLabels,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
