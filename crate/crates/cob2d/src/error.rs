use thiserror::Error;

/// Crate-wide error type.
///
/// Variants follow the failure surfaces of the individual layers: malformed
/// manifold data, invalid composition/surgery loci, rewrite hypotheses that
/// do not hold, shape mismatches in exact linear algebra, and policy
/// violations (non-compact evaluation requesting the top handle).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("composition error: target/source mismatch at index {index}: {left} vs {right}")]
    Composition {
        index: usize,
        left: String,
        right: String,
    },

    #[error("surgery error: {0}")]
    Surgery(String),

    #[error("unsupported sphere kind: {0}")]
    UnsupportedSphere(String),

    #[error("replay error at move {index}: {reason}")]
    Replay { index: usize, reason: String },

    #[error("rewrite not applicable: {0}")]
    Rewrite(String),

    #[error("endpoint mismatch: {0}")]
    Endpoints(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate trace form; radical basis: {0}")]
    DegenerateForm(String),

    #[error("handle element is not invertible; no handle data extends this trace")]
    NonInvertibleHandle,

    #[error("non-compact policy violation: {0}")]
    NonCompact(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
