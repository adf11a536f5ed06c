use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// Variants are grouped by the process exit code the command-line front end
/// maps them to (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported field order {0} (expected 2 or 3)")]
    UnsupportedField(i64),

    #[error("index {index} out of range 1..={bound} in {context}")]
    IndexOutOfRange { context: String, index: i64, bound: usize },

    #[error("receiver {receiver} both wants and knows message {message}")]
    WantKnownOverlap { receiver: usize, message: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("problem is not single-uniprior: {0}")]
    NotSingleUniprior(String),

    #[error("invalid spanning tree input: {0}")]
    InvalidTree(String),

    #[error("invalid index code: {0}")]
    InvalidCode(String),

    #[error("receiver {receiver} cannot decode message {message} from this code")]
    NotDecodable { receiver: usize, message: usize },

    #[error("invalid channel configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("infeasible size: {0}")]
    Infeasible(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit status: 1 validation, 2 infeasible size, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) => 2,
            Error::Io { .. } => 3,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
