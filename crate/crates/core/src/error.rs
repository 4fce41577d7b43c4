use thiserror::Error;

/// Errors raised by the library. The CLI maps them onto exit codes through
/// [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input at `{path}`: {msg}")]
    Validation { path: String, msg: String },

    #[error("not quasihomogeneous: {0}")]
    NotQuasihomogeneous(String),
    #[error("non-isolated singularity: the Jacobian quotient is infinite-dimensional")]
    NonIsolated,
    #[error("degenerate pairing: Gram matrix is singular")]
    DegeneratePairing,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("mod-z condition violated: {0}")]
    ModZViolated(String),
    #[error("grading obstruction inconclusive: pair ({0}, {1}) is not forced to vanish at p = {2}")]
    GradingInconclusive(usize, usize, i64),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("not semisimple at the given point: {0}")]
    NotSemisimple(String),
    #[error("degenerate critical locus: quotient dimension {found} differs from Milnor number {mu}")]
    DegenerateCriticalLocus { found: usize, mu: usize },
    #[error("non-integrable data: {0}")]
    NonIntegrable(String),
    #[error("z-floor too shallow: order requires depth {required}")]
    ZFloorTooShallow { required: i32 },

    #[error("truncation exhausted: nonzero terms of s-degree above {bound} were discarded")]
    TruncationExhausted { bound: u32 },
}

impl Error {
    /// 1 = input validation, 2 = mathematical precondition, 3 = truncation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::Validation { .. } => 1,
            Error::TruncationExhausted { .. } | Error::ZFloorTooShallow { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn validation(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation { path: path.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
