use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("series length {0} < 2")]
    TooShort(usize),
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("sample interval must be positive and finite, got {0}")]
    BadSampleInterval(f64),
    #[error("frequency {0} outside [0, 0.5] cycles per sample")]
    FrequencyOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series of length {n} shorter than KZFT window length {window}")]
    SeriesShorterThanWindow { n: usize, window: usize },
    #[error("truncation point {m} must satisfy 1 <= M < n = {n}")]
    TruncationTooLarge { m: usize, n: usize },
    #[error("lag-window argument {0} outside [-1, 1]")]
    LagOutOfRange(f64),
    #[error("empty frequency grid")]
    EmptyGrid,
    #[error("ordinate must be positive, got {0}")]
    NonPositiveOrdinate(f64),
    #[error("ordinate must be nonnegative, got {0}")]
    NegativeOrdinate(f64),
}

pub type Result<T> = std::result::Result<T, SpectralError>;
