use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by index construction, queries, and (de)serialization.
#[derive(Debug, Error)]
pub enum Error {
    #[error("position {pos} out of range for length {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("rank {rank} out of range (only {total} occurrences)")]
    RankOutOfRange { rank: usize, total: usize },

    #[error("empty input sequence")]
    EmptySequence,

    #[error("invalid range [{lo}..{hi}] for length {len}")]
    InvalidRange { lo: usize, hi: usize, len: usize },

    #[error("rank {k} invalid for a range of {size} elements")]
    InvalidRank { k: usize, size: usize },

    #[error("symbol bounds are reversed (lo > hi)")]
    InvalidSymbolBounds,

    #[error("symbol not present in the alphabet")]
    UnknownSymbol,

    #[error("corpus contains no documents")]
    NoDocuments,

    #[error("document {doc} contains the reserved sentinel byte 0")]
    SentinelInDocument { doc: usize },

    #[error("empty pattern")]
    EmptyPattern,

    #[error("pattern contains the reserved sentinel byte 0")]
    SentinelInPattern,

    #[error("malformed index file: {0}")]
    Format(String),

    #[error("stored symbol {value} does not fit the requested symbol type")]
    SymbolOverflow { value: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
