use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the segmentation library and pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("failed to decode {path}: {reason}")]
    Decode { path: PathBuf, reason: String },

    #[error("threshold {0} is outside [0, 255]")]
    TauOutOfRange(i64),

    #[error("entropic index q must be > 0 and != 1, got {0}")]
    InvalidQ(f64),

    #[error("degenerate histogram: fewer than two distinct nonzero bins, no threshold split exists")]
    DegenerateHistogram,

    #[error("failed to write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for this error class: 2 bad arguments,
    /// 3 decode error, 4 degenerate histogram, 5 output I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::TauOutOfRange(_) | Error::InvalidQ(_) => 2,
            Error::Decode { .. } => 3,
            Error::DegenerateHistogram => 4,
            Error::Output { .. } => 5,
        }
    }
}
