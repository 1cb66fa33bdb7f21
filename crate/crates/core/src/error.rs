use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grade mismatch: expected k = {expected}, found k = {found}")]
    GradeMismatch { expected: usize, found: usize },

    #[error("grade {k} exceeds ambient dimension {n}")]
    GradeTooLarge { n: usize, k: usize },

    #[error("ambient dimension {0} is not supported (1 <= n <= 64)")]
    UnsupportedDimension(usize),

    #[error("operation requires k >= 1")]
    GradeZero,

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate index {index} in blade")]
    DuplicateIndex { index: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("{op} is only defined for (n, k) = {expected}, found ({n}, {k})")]
    WrongCase { op: &'static str, expected: &'static str, n: usize, k: usize },

    #[error("infinite orbit family for (n, k) = ({n}, {k}): {row}")]
    InfiniteFamily { n: usize, k: usize, row: &'static str },

    #[error("no catalog for (n, k) = ({n}, {k})")]
    UnsupportedCase { n: usize, k: usize },

    #[error("unknown orbit id {0:?}")]
    UnknownId(String),

    #[error("count mismatch for ({n}, {k}) {column}: computed {computed}, expected {expected}")]
    CountMismatch { n: usize, k: usize, column: &'static str, computed: String, expected: String },

    #[error("catalog validation failed: {0}")]
    Catalog(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
