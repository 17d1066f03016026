use thiserror::Error;

/// Everything that can go wrong while building, transforming or classifying a state.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid split l={l} for n={n} (need 1 <= l <= n-1)")]
    InvalidSplit { l: usize, n: usize },

    #[error("state has no nonzero amplitude")]
    ZeroState,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),

    #[error("states have mixed dims: {0}")]
    MixedDims(String),

    #[error("numeric overflow converting entry {0} to floating point")]
    Overflow(String),

    #[error("no invertible sample after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),

    #[error("parse error{}: {message}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error("duplicate amplitude index {0:?}")]
    DuplicateIndex(Vec<usize>),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
