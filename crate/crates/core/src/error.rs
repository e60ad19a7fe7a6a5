use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?} as a finite decimal: {reason}")]
    Parse { input: String, reason: &'static str },

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("profile has propagated {found} stages but the instance has {expected} values")]
    StageMismatch { expected: usize, found: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),

    #[error("malformed instance document: {0}")]
    Document(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: &'static str) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason,
        }
    }
}
