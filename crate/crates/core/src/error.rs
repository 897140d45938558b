//! Crate-wide error type.

use thiserror::Error;

/// Every fallible operation in the crate reports through this enum.
#[derive(Debug, Error)]
pub enum Error {
    /// A claimed order relation contains a directed cycle.
    #[error("relation has a cycle through `{0}`")]
    Cycle(String),

    /// An element id was referenced but never declared.
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    /// A duplicate element id in a declaration list.
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    /// An element id with characters outside `[A-Za-z0-9_]`.
    #[error("invalid element id `{0}`")]
    InvalidId(String),

    /// The poset has width above the supported limit.
    #[error("width {width} exceeds the supported bound {bound}")]
    WidthExceeded { width: usize, bound: usize },

    /// A claimed chain cover is not a partition into chains.
    #[error("invalid chain cover: {0}")]
    InvalidCover(String),

    /// The incomparability graph is not bipartite (width above 2).
    #[error("incomparability graph is not bipartite")]
    NotBipartite,

    /// An algorithm requires a connected incomparability graph.
    #[error("incomparability graph is disconnected")]
    Disconnected,

    /// Instance size above a hard limit of an exponential-time routine.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// A structural precondition of a routine does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Interval evaluation could not certify a sign at any tried precision.
    #[error("cannot certify sign of `{0}` (symbolically irreducible, interval straddles zero)")]
    AmbiguousSign(String),

    /// Two independent computations of the same quantity disagree.
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    /// Malformed input text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
