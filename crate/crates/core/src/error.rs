use thiserror::Error;

/// Errors produced by the engines and parsers in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("basic move (0,0) has no direction")]
    ZeroMove,

    #[error("move set must contain at least one basic move")]
    EmptyMoveSet,

    #[error("moves {first} and {second} have the same slope")]
    DuplicateSlope { first: usize, second: usize },

    #[error("arrangement contains the same line twice (entries {first} and {second})")]
    DuplicateLine { first: usize, second: usize },

    #[error("pieces {first} and {second} occupy the same point")]
    CoincidentPieces { first: usize, second: usize },

    #[error("piece {attacked} lies on move line {move_index} of piece {attacker}")]
    Attacking {
        attacker: usize,
        attacked: usize,
        move_index: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid board: {0}")]
    InvalidBoard(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("projective map is singular")]
    SingularMap,

    #[error("point is sent to the line at infinity")]
    PointAtInfinity,

    #[error("inconsistent side data for pieces ({i},{k}): {reason}")]
    InconsistentSides { i: usize, k: usize, reason: String },

    #[error("{p} is not a valid prime for this move set")]
    InvalidPrime { p: u64 },

    #[error("interpolation rejected at prime {p}: {reason}")]
    Interpolation { p: u64, reason: String },

    #[error("residue class {residue} has {have} data points, needs {need}")]
    InsufficientData { residue: i64, have: usize, need: usize },

    #[error("data point n={n} misses the fit by {residual}")]
    InconsistentData { n: i64, residual: String },

    #[error("{value} is not divisible by {divisor}")]
    InexactDivision { value: String, divisor: String },

    #[error("census did not stabilize by n={n_max}")]
    Unstable { n_max: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
