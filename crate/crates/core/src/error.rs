use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("evaluation budget of {max_fes} cannot cover {needed} evaluations")]
    BudgetTooSmall { max_fes: u64, needed: u64 },

    #[error("evaluation budget exhausted after {used} evaluations")]
    BudgetExhausted { used: u64 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),

    #[error("statistics error: {0}")]
    Stats(String),

    #[error("suite file error: {0}")]
    SuiteFormat(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
