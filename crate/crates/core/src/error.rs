use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NcgError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("reduction did not terminate within {0} steps")]
    Reduction(usize),
    #[error("size {size} exceeds budget {budget}")]
    Size { size: usize, budget: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("truncation order too small: {0}")]
    Order(String),
    #[error("numerically indeterminate: {0}")]
    Indeterminate(String),
    #[error("data exhausted: need {needed}, have {have}")]
    DataExhausted { needed: usize, have: usize },
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("out of range: {0}")]
    Range(String),
}

impl NcgError {
    /// Short stable code used by reports.
    pub fn code(&self) -> &'static str {
        match self {
            NcgError::Parameter(_) => "parameter",
            NcgError::Parse { .. } => "parse",
            NcgError::Reduction(_) => "reduction",
            NcgError::Size { .. } => "size",
            NcgError::Degenerate(_) => "degenerate",
            NcgError::Domain(_) => "domain",
            NcgError::Precondition(_) => "precondition",
            NcgError::Type(_) => "type",
            NcgError::Order(_) => "order",
            NcgError::Indeterminate(_) => "indeterminate",
            NcgError::DataExhausted { .. } => "data-exhausted",
            NcgError::Convergence(_) => "convergence",
            NcgError::Range(_) => "range",
        }
    }
}

pub type Result<T> = std::result::Result<T, NcgError>;
