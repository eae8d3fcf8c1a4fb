use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// shown to a user verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension n={n} out of range for {op} (allowed {min}..={max})")]
    DimensionOutOfRange {
        op: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },
    #[error("level {level} out of range for n={n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("mask {mask:#b} does not fit in n={n} bits")]
    MaskOutOfRange { mask: u64, n: usize },
    #[error("not a partial order: cycle through element {0}")]
    Cycle(usize),
    #[error("relation index {index} out of range for poset of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("unknown poset name `{0}`")]
    UnknownPoset(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_dimension(op: &'static str, n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        return Err(Error::DimensionOutOfRange { op, n, min, max });
    }
    Ok(())
}
