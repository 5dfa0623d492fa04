use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `position` is 1-based.
    #[error("parse error at position {position}: unexpected character {found:?}")]
    Parse { position: usize, found: char },

    #[error("string of length {len} is too short for a {what} (needs at least {needed})")]
    TooShort {
        what: &'static str,
        len: usize,
        needed: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty pattern: gapped decks carry no length-0 content")]
    EmptyPattern,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(
        "exact counts may exceed 64 bits (length-{level} slice bound is {bound}); use fingerprint mode"
    )]
    Overflow { level: usize, bound: String },

    #[error("wildcard J is not allowed in a text string (position {position})")]
    WildcardInText { position: usize },

    #[error("refusing to list {patterns} patterns (limit {limit})")]
    TooLarge { patterns: u128, limit: u128 },

    #[error("fingerprint mode needs at least one prime")]
    NoPrimes,

    #[error("signatures are not comparable: {0}")]
    Incomparable(&'static str),

    #[error("checkpoint log: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
