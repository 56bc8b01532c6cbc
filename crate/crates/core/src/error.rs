use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input text is empty")]
    EmptyText,
    #[error("input contains a 0x00 byte at offset {0}")]
    InvalidByte(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("pattern must be non-empty")]
    InvalidPattern,
    #[error("malformed index file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
