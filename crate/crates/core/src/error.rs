use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    /// No integer `k` keeps the next pulse inside its cycle / the frequency band.
    #[error("no admissible integer k for the cancellation recursion")]
    Infeasible,

    #[error("switching frequency {fs_hz} Hz outside [{min_hz}, {max_hz}] Hz")]
    OutOfBand {
        fs_hz: f64,
        min_hz: f64,
        max_hz: f64,
    },

    #[error("pulse position {position} outside [0, {max}]")]
    PositionOutOfRange { position: f64, max: f64 },

    #[error("malformed cycle records: {0}")]
    MalformedRecords(String),

    #[error("sample rate {rate_hz} Hz below required {required_hz} Hz")]
    RateTooLow { rate_hz: f64, required_hz: f64 },

    #[error("waveform has {samples} samples, fewer than one segment of {segment_len}")]
    TooShort { samples: usize, segment_len: usize },

    #[error("spectra are not on the same frequency grid")]
    GridMismatch,

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
