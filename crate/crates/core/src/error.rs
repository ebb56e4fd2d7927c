use thiserror::Error;

/// Errors reported by index construction, queries, and (de)serialization.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: i64, len: usize },

    #[error("symbol {symbol} is not below the alphabet size {sigma}")]
    SymbolOutOfRange { symbol: u64, sigma: u64 },

    #[error("value {value} does not fit in {width} bits")]
    ValueTooWide { value: u64, width: u32 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
