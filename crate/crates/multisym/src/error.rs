//! Crate-wide error type.

/// Errors raised by the library.
///
/// The CLI maps these onto its exit-code contract: parse errors exit 2,
/// precondition/hypothesis failures exit 3, witness mismatches exit 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operands live in different ambient spaces or have incompatible variance.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    /// A degree is out of the range an operation supports.
    #[error("degree error: {0}")]
    Degree(String),
    /// Wrong number of vector arguments to a multilinear evaluation.
    #[error("arity error: expected {expected} vectors, got {got}")]
    Arity { expected: usize, got: usize },
    /// A construction hypothesis failed (named explicitly).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// An operation precondition failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A supplied multivector witness does not realize the claimed class.
    #[error("witness mismatch: {0}")]
    WitnessMismatch(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A map that must be invertible is singular.
    #[error("singular map: {0}")]
    Singular(String),
    /// I/O failure while reading or writing instance files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
