use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("action conflict for generator {generator}, Sq^{square}: {msg}")]
    Completion {
        generator: usize,
        square: u32,
        msg: String,
    },
    #[error("inconsistent module: {0}")]
    Consistency(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("resolution too small: {0}")]
    Depth(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unknown module {0}")]
    UnknownModule(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
