use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qspeed_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("shard {shard}: {source}")]
    Shard {
        shard: usize,
        #[source]
        source: Box<LabError>,
    },
    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
}

impl LabError {
    /// Process exit status: 2 for bad input, 3 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            LabError::Usage(_) | LabError::Core(_) => 2,
            LabError::Io { .. } | LabError::Csv { .. } | LabError::Parse { .. } => 3,
            LabError::Shard { source, .. } => source.exit_code(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> LabError {
        let path = path.into();
        move |source| LabError::Io { path, source }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>) -> impl FnOnce(csv::Error) -> LabError {
        let path = path.into();
        move |source| LabError::Csv { path, source }
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
