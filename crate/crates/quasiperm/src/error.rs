//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by parsing, validation, and budget guards.
#[derive(Debug, Error)]
pub enum Error {
    /// A text input could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A structural axiom failed during validation.
    #[error("invalid building set: {0}")]
    InvalidBuildingSet(String),

    /// The base-exchange axiom (or a basic shape check) failed.
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    /// Blocks do not form an ordered set partition of the ground set.
    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    /// Bad vertex indices, loops, or an edge that is not present.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A precondition on an argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The ground set is larger than the supported enumeration range.
    #[error("ground size {n} out of supported range 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },

    /// An enumeration would exceed the configured work budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The operation requires a homogeneous expression.
    #[error("expression is not homogeneous")]
    NonHomogeneous,

    /// A JSON document does not match the expected schema.
    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
