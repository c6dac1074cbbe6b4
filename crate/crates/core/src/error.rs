use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by operations on already-validated structures.
///
/// Structural validation itself never errors; it returns a
/// [`ValidationReport`]. The `Invalid` variant carries such a report when a
/// constructor refuses its input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("element index {0} out of range")]
    ElementIndex(usize),
    #[error("`{lo}` is not below `{hi}`")]
    NotBelow { lo: String, hi: String },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("validation failed: {0}")]
    Invalid(ValidationReport),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
