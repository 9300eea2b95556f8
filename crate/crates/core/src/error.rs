use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("density is undefined for a set of {0} vertices (need at least 2)")]
    UndefinedDensity(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("n = {n} is too small: m = {m} must exceed 1")]
    NTooSmall { n: u64, m: f64 },

    #[error("threshold is degenerate for delta = {0} (need delta < 1/2)")]
    DegenerateThreshold(f64),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI's JSON error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UndefinedDensity(_) => "undefined_density",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::NTooSmall { .. } => "n_too_small",
            Error::DegenerateThreshold(_) => "degenerate_threshold",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }

    /// Shorthand for [`Error::InvalidArgument`].
    pub fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
