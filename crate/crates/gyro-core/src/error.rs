use thiserror::Error;

/// Coarse classification used by callers that map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-contract input.
    Input,
    /// A configured size cap or search budget was hit.
    Resource,
    /// An internal cross-check of a guaranteed property failed; indicates a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("order must be at least 1")]
    EmptyTable,

    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("element 0 is not a left identity: 0 + {col} = {value}")]
    NotLeftIdentity { col: usize, value: usize },

    #[error("row {row} is not a permutation: value {value} repeats")]
    DuplicateInRow { row: usize, value: usize },

    #[error("column {col} is not a permutation: value {value} repeats")]
    DuplicateInColumn { col: usize, value: usize },

    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("permutation of length {len} expected to have length {expected}")]
    PermutationLength { len: usize, expected: usize },

    #[error("image sequence is not a bijection: value {value} repeats")]
    NotABijection { value: usize },

    #[error("subset universe has size {got}, expected {expected}")]
    UniverseMismatch { expected: usize, got: usize },

    #[error("subset is empty")]
    EmptySubset,

    #[error("subset is not a subgyrogroup: {a} + {b} = {product} is outside it")]
    NotClosed { a: usize, b: usize, product: usize },

    #[error("no catalog entry named {name:?}; available: {available}")]
    UnknownCatalogName { name: String, available: String },

    #[error("table has no declared gyration table")]
    MissingGyrationTable,

    #[error("element {element} has no left inverse")]
    NoLeftInverse { element: usize },

    #[error("input is not a verified gyrogroup: {axiom} fails{witness}")]
    NotAGyrogroup {
        axiom: &'static str,
        witness: String,
    },

    #[error("order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("search order {order} requires an explicit node or time budget")]
    BudgetRequired { order: usize },

    #[error("fragment conflict at row {row}, column {col}: {detail}")]
    FragmentConflict {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("search stopped before completion ({} tables found so far)", .0.results.len())]
    SearchInterrupted(Box<crate::search::Interrupted>),

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("{0}")]
    Input(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::OrderCapExceeded { .. }
            | Error::BudgetRequired { .. }
            | Error::SearchInterrupted(_) => ErrorKind::Resource,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
