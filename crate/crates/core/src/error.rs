use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: last estimate {last:e}, previous {previous:e}")]
    Quadrature { last: f64, previous: f64 },
    #[error("precision budget exceeded: {0}")]
    Precision(String),
    #[error("path is not progressive: {0}")]
    Path(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("loop data: {0}")]
    LoopData(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
