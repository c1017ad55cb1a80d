use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty signal")]
    EmptySignal,

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("mapped value out of unit range: {value}")]
    OutOfUnitRange { value: f64 },

    #[error("constant signal: sigmoid mapping undefined")]
    ConstantSignal,

    #[error("insufficient samples for embedding: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pattern code {code} outside alphabet of size {alphabet_size}")]
    PatternOutOfRange { code: usize, alphabet_size: usize },

    #[error("empty pattern list")]
    EmptyPatterns,

    #[error("undefined SampEn (no matches)")]
    UndefinedSampEn,

    #[error("zero SD")]
    ZeroSd,

    #[error("zero-power signal")]
    ZeroPower,

    #[error("zero mean")]
    ZeroMean,

    #[error("zero pooled variance")]
    ZeroPooledVariance,

    #[error("group too small: need at least 2 signals, got {0}")]
    GroupTooSmall(usize),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("window longer than signal: window {window}, signal {signal}")]
    WindowTooLong { window: usize, signal: usize },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Csv(#[from] csv::Error),

    #[error("experiment registry: {0}")]
    Registry(String),

    #[error("unknown experiment `{name}`; valid names: {valid}")]
    UnknownExperiment { name: String, valid: String },
}
