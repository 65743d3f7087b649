use thiserror::Error;

/// Errors raised by the library. Failed verdicts are never errors; they are
/// reported through [`crate::audit::AuditReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is outside the admissible range")]
    ProbabilityOutOfRange(String),
    #[error("ground set of size {n} exceeds the cap of {cap}")]
    GroundTooLarge { n: u32, cap: u32 },
    #[error("element {element} is outside the ground set [{n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed rational {0:?} (expected \"a/b\")")]
    MalformedRational(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("family is not {r}-wise {t}-intersecting")]
    NotIntersecting { r: u32, t: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown example family {0:?}")]
    UnknownExample(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
