use kzp_core::SpectralError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, CliError>;
