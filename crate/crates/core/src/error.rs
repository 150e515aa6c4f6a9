use thiserror::Error;

/// Errors raised across the engine.
///
/// Verification failures are never errors: they are recorded as data in a
/// [`Report`](crate::report::Report). Everything here is a violated
/// precondition or malformed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fibral lattice needs n >= 3, got n = {0}")]
    SmallFiber(usize),

    #[error("vectors live in different fibral spaces (V_{left} vs V_{right})")]
    SpaceMismatch { left: usize, right: usize },

    #[error("coefficient vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("arc from {start} to {end} in Z/{n}Z covers the whole cycle")]
    InvalidArc { n: usize, start: usize, end: usize },

    #[error("reflection vector has square {0}, expected -2")]
    NotARoot(i64),

    #[error("ramification degree must be >= 1, got {0}")]
    InvalidDegree(i64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid ramification profile: {0}")]
    InvalidProfile(String),

    #[error("sum of fiber sizes {0} is not a positive multiple of 12")]
    ConfigInvalidDivisibility(usize),

    #[error("fiber {name} has n = {n}; only I_n with n >= 3 are modeled")]
    ConfigSmallFiber { name: String, n: usize },

    #[error("torsion sections {first} and {second} meet the same components")]
    TorsionCollision { first: String, second: String },

    #[error("invalid surface config: {0}")]
    InvalidConfig(String),

    #[error("intersection number {0}.{1} is neither given nor derivable")]
    MissingPairing(String, String),

    #[error("intersection data is not translation/inversion invariant: {0}")]
    InconsistentPairing(String),

    #[error("{0} is not a tracked section")]
    UntrackedTranslate(String),

    #[error("matrix is {rows}x{cols}, lattice has rank {rank}")]
    ShapeError { rows: usize, cols: usize, rank: usize },

    #[error("matrix does not preserve the intersection form")]
    NotIsometry,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::ParseError {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
