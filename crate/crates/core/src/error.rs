use thiserror::Error;

/// Errors reported by the ldiag library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("word is not compact: variable x{missing} is missing from its alphabet")]
    NotCompact { missing: u32 },
    #[error("matrix is not packed: {0}")]
    NotPacked(String),
    #[error("position {position} out of range for a word of length {len}")]
    OutOfRange { position: usize, len: usize },
    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("qt must be 0 or 1, got {0}")]
    InvalidQt(u32),
    #[error("size mismatch: {0}")]
    Mismatch(String),
    #[error("the empty code is not allowed here: {0}")]
    EmptyCode(&'static str),
    #[error("divergent zeta word: {0}")]
    Divergent(String),
    #[error("truncation {truncation} is smaller than the depth {depth}")]
    TruncationTooSmall { truncation: usize, depth: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
