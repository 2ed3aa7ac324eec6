//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or vector dimensions do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A homomorphism matrix does not carry source relations into target relations.
    #[error("incompatible homomorphism: {0}")]
    Incompatible(String),

    /// A group action failed validation (closure, identity, or automorphism check).
    #[error("invalid group action: {0}")]
    InvalidAction(String),

    /// An actor index outside the enumerated acting group.
    #[error("unknown actor index {0}")]
    UnknownActor(usize),

    /// Not a valid (type, rank) combination for a root system.
    #[error("unsupported root system {0}_{1}")]
    UnsupportedRootSystem(char, usize),

    /// Outer-twist classification requested for a case absent from the built-in table.
    #[error("outer classification not tabulated: {0}")]
    OuterNotTabulated(String),

    /// Named catalog entry does not exist.
    #[error("no such catalog entry: {0}")]
    UnknownCatalogEntry(String),

    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A work budget would be exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
