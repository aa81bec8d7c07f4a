use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] cppforge_core::Error),

    #[error("direct and ha scans disagree at a = {a}: direct says {direct}, ha says {ha}")]
    Mismatch { a: u128, direct: bool, ha: bool },

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// 1 for a counterexample, 3 for a resource cap, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Mismatch { .. } => 1,
            HarnessError::Core(e) if e.is_resource_cap() => 3,
            _ => 2,
        }
    }
}
