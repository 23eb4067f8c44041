use thiserror::Error;

pub type Result<T> = std::result::Result<T, EngineError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("polynomials live in different ambient rings")]
    MismatchedRings,
    #[error("invalid ring presentation: {0}")]
    InvalidPresentation(String),
    #[error("not a system of parameters: {0}")]
    NotParameterSystem(String),
    #[error("cap exceeded: {what} (cap = {cap})")]
    CapExceeded { what: String, cap: usize },
    #[error("monomial order is not degree-compatible")]
    OrderNotDegreeCompatible,
    #[error("local length is infinite: {0}")]
    InfiniteLength(String),
    #[error("cannot certify: {0}")]
    Uncertified(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl EngineError {
    pub fn cap(what: impl Into<String>, cap: usize) -> Self {
        EngineError::CapExceeded {
            what: what.into(),
            cap,
        }
    }
}
