use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation at x = 0 of a polynomial with negative powers")]
    EvalAtZero,
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid t = {t} for n = {n}")]
    InvalidT { n: usize, t: usize },
    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("diagram {diagram} does not act on a family-{family} module")]
    NotInFamily { diagram: String, family: String },
    #[error("bottom row does not match the cell-module reference diagram")]
    BadBottomRow,
    #[error("partition sizes differ by {0}, expected 1 or 2")]
    InvalidShapes(isize),
    #[error("cache header mismatch: expected `{expected}`, found `{found}`")]
    CacheVersionMismatch { expected: String, found: String },
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
