use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The working precision is too low to decide the requested quantity.
    /// Recompute with more bits.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A configured size or memory cap would be exceeded.
    #[error("resource cap exceeded: {what} = {requested} exceeds cap {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// Division by a ball whose enclosure contains zero.
    #[error("division by a ball that contains zero")]
    DivisionByZero,

    /// Least-squares input with no usable spread.
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
