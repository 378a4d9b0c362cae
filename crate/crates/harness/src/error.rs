use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("exhaustive tier limited to n ≤ {max}, got {n}")]
    CorpusTooLarge { n: usize, max: usize },
    #[error("{0}")]
    InvalidParams(String),
    #[error(transparent)]
    Core(#[from] pcube::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
