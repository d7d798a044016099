use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid input: {0}")]
    Validation(etale_core::Error),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(etale_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<etale_core::Error> for LabError {
    fn from(e: etale_core::Error) -> Self {
        match e {
            etale_core::Error::ExplosionGuard { needed, budget } => {
                LabError::BudgetExceeded(format!("{needed} evaluations needed, budget {budget}"))
            }
            other => LabError::Core(other),
        }
    }
}

pub type LabResult<T> = Result<T, LabError>;
