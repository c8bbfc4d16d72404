use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum MotextError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed checkpoint: {0}")]
    Malformed(String),
    #[error("unsupported checkpoint format {format} version {version}")]
    Version { format: String, version: u32 },
    #[error("checkpoint checksum mismatch: header says {expected}, payload hashes to {actual}")]
    Checksum { expected: String, actual: String },
    #[error("chart file line {line}: {message}")]
    Chart { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] motext_core::Error),
}

impl MotextError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        MotextError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = MotextError> = std::result::Result<T, E>;
