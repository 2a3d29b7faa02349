use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A constructor argument violated its precondition.
    #[error("{field} must be {requirement} (got {value})")]
    InvalidParameter {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("unknown distribution family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` expects {expected} parameter(s), got {got}")]
    Arity {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    /// An argument fell outside the domain of the operation.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("missing capability: {0}")]
    Capability(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::InvalidParameter {
            field,
            requirement,
            value,
        }
    }
}
