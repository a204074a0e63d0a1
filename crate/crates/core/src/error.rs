use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::exit_code`] groups them the way the command line reports them:
/// malformed input, violated mathematical preconditions, and failed internal
/// cross-checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("subgroups or characters live in different ambient groups")]
    AmbientMismatch,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("non-primitive parametrization of branch {0}: implicit equation is a proper power")]
    NonPrimitive(String),
    #[error("coincident branches {0} and {1}")]
    CoincidentBranches(String, String),
    #[error("action is not faithful: joint kernel of the characters has order {0}")]
    NotFaithful(usize),
    #[error("not semi-invariant: {0}")]
    NotSemiInvariant(String),
    #[error("curvette pair {0} is not generic: {1}")]
    CurvettePair(String, String),
    #[error("point is not in the smooth part of the divisor: {0}")]
    NotSmoothPoint(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("jet bound did not stabilize below {0}")]
    JetBound(usize),
    #[error("representation inference failed: {0}")]
    Inference(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    /// Process exit code: 2 input error, 3 precondition failure, 4 cross-check failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::ModulusMismatch(..) | Error::AmbientMismatch => 2,
            Error::CrossCheck(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
