use thiserror::Error;

/// Error type shared by the whole crate.
///
/// The variants are deliberately coarse: callers (in particular the batch
/// front end) dispatch on the variant, not on the message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input does not describe a usable domain (empty vertex list,
    /// vertices outside the nonnegative quadrant, origin not contained, ...).
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// The input polygon has zero area.
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    /// A parameter violates a precondition (zero vector, nonpositive scale
    /// factor, mismatched fans, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation needs a smooth fan.
    #[error("unsupported fan: {0}")]
    UnsupportedFan(String),

    /// The requested quantity needs a strongly convex domain; the
    /// brute-force oracle may still apply.
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// A curve class is not in the movable cone of the fan.
    #[error("class is not movable: {0}")]
    NotMovable(String),

    /// The brute-force search would exceed its budget.
    #[error("search budget exceeded: {0}")]
    ResourceExceeded(String),

    /// Malformed input text (JSON domain files, rational literals, ...).
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal cross-check failed (oracle mismatch, golden fixture
    /// mismatch). Indicates a bug, not a user error.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit code used by the command-line front end:
    /// 1 parse/domain error, 2 unsupported domain, 3 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedDomain(_) | Error::UnsupportedFan(_) => 2,
            Error::Verification(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
