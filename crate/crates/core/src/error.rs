use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Base genus must be at least 1.
    InvalidGenus(usize),
    /// Two classes (or a class and a matrix) built over different base genera.
    ContextMismatch { left: usize, right: usize },
    /// A coordinate vector of the wrong length for its context.
    DimensionMismatch { expected: usize, found: usize },
    /// Handle index outside `1..=g`, or a repeated index where distinct ones are required.
    InvalidIndex { index: usize, g: usize },
    /// A move parameter that is malformed for the context (e.g. wrong number of signs).
    InvalidMove(String),
    /// The operation is only defined for some base genera.
    UnsupportedContext { g: usize, reason: &'static str },
    /// The operation is undefined on the zero class.
    ZeroClass,
    /// The twisted model needs a nonzero bundle parameter.
    ZeroModulus,
    /// A surface operation whose geometric preconditions fail.
    SurfacePrecondition(String),
    /// Replay needs its input in normal form.
    NotNormal,
    /// Replay would materialize more surface pieces than the configured limit.
    ReplayTooLarge { pieces: BigInt, limit: u64 },
    /// Word search explored more states than its node budget allows.
    BudgetExceeded { nodes: u64, depth_completed: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGenus(g) => write!(f, "base genus must be positive, got {g}"),
            Error::ContextMismatch { left, right } => {
                write!(f, "context mismatch: genus {left} vs genus {right}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::InvalidIndex { index, g } => {
                write!(f, "handle index {index} invalid for genus {g}")
            }
            Error::InvalidMove(msg) => write!(f, "invalid move: {msg}"),
            Error::UnsupportedContext { g, reason } => {
                write!(f, "unsupported for genus {g}: {reason}")
            }
            Error::ZeroClass => write!(f, "operation undefined on the zero class"),
            Error::ZeroModulus => write!(f, "bundle parameter m must be nonzero"),
            Error::SurfacePrecondition(msg) => write!(f, "surface precondition failed: {msg}"),
            Error::NotNormal => write!(f, "class is not in normal form"),
            Error::ReplayTooLarge { pieces, limit } => {
                write!(f, "replay needs {pieces} pieces, limit is {limit}")
            }
            Error::BudgetExceeded { nodes, depth_completed } => write!(
                f,
                "node budget exceeded after {nodes} nodes (depth {depth_completed} fully explored)"
            ),
        }
    }
}

impl core::error::Error for Error {}
