use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Jitter amplitudes that cannot produce a separated node set.
    #[error("invalid jitter on axis {axis}: M = {amplitude} (need 0 <= M < 1/2)")]
    InvalidJitter { axis: usize, amplitude: f64 },

    #[error("coincident nodes: t_{n} = t_{m} = {value}")]
    CoincidentNodes { n: i64, m: i64, value: f64 },

    /// A closed-form constant was asked for outside the region where all of
    /// its bases are positive.
    #[error("{constant}: {detail}")]
    Domain {
        constant: &'static str,
        detail: String,
    },

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("non-convergent tail: {0}")]
    NonConvergentTail(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(constant: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            constant,
            detail: detail.into(),
        }
    }

    /// Process exit code for this error: 1 for configuration and IO problems,
    /// 2 for domain and precondition failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io { .. } | Error::Json(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidJitter { .. } => "invalid_jitter",
            Error::CoincidentNodes { .. } => "coincident_nodes",
            Error::Domain { .. } => "domain",
            Error::NotAdmissible(_) => "not_admissible",
            Error::InvalidSignal(_) => "invalid_signal",
            Error::NonConvergentTail(_) => "non_convergent_tail",
            Error::Dimension { .. } => "dimension",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }
}
