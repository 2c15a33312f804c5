use thiserror::Error;

/// Errors produced by the library. Every variant carries enough context to
/// be shown to a CLI user as-is.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a grid needs at least 2 samples along each axis, got {0}")]
    TooShort(usize),
    #[error("sample {0} is not a finite number")]
    NonFinite(usize),
    #[error("exponent must be a finite number >= 1, got {0}")]
    BadExponent(f64),
    #[error("p must exceed 1")]
    ExponentOne,
    #[error("resolution {size} is not a multiple of {required}")]
    Misaligned { size: usize, required: usize },
    #[error("degree ({n}, {m}) is too high for a {rows}x{cols} grid")]
    Nyquist {
        n: usize,
        m: usize,
        rows: usize,
        cols: usize,
    },
    #[error("input is not mean-zero ({0})")]
    NotMeanZero(String),
    #[error("partition must not be empty")]
    EmptyPartition,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size {size} exceeds the brute-force limit {limit}")]
    OracleLimit { size: usize, limit: usize },
    #[error(
        "mixed modulus on a {rows}x{cols} grid exceeds the {cap}x{cap} cap (use the cap override)"
    )]
    CapExceeded {
        rows: usize,
        cols: usize,
        cap: usize,
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed csv: {0}")]
    Csv(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
