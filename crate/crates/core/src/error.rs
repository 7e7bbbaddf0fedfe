use thiserror::Error;

/// Errors produced by grid construction and the transform pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimensions must be at least 2x2, got {rows}x{cols}")]
    InvalidDimensions { rows: usize, cols: usize },

    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("length mismatch: expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("buffer holds {len} values but {rows}x{cols}x{channels} needs {expected}")]
    BufferSize {
        rows: usize,
        cols: usize,
        channels: usize,
        len: usize,
        expected: usize,
    },

    #[error("expected a {expected}-channel image, got {got} channels")]
    ChannelMismatch { expected: usize, got: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid_param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
