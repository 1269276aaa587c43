use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("element order exceeds cap {0}")]
    OrderCapExceeded(u64),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("hash collision between distinct payloads (key {0:032x})")]
    HashCollision(u128),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("cache rejected: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
