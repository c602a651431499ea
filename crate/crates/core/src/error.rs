use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex {vertex} lies on the truncated frontier (radius {radius}); explore a larger region")]
    OutsideRegion { vertex: u32, radius: usize },

    #[error("enumeration budget exceeded: {needed} words needed, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("half-integer expression has odd doubled value {0}")]
    Parity(i64),

    #[error("complex is not {0}-regular")]
    NotRegular(usize),

    #[error("simplex {0:?} is not in the complex")]
    MissingSimplex(Vec<u32>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
