use thiserror::Error;

/// Errors shared across the workbench modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed relation table: {0}")]
    MalformedRelation(String),
    #[error("element index {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("subset has no least upper bound")]
    NoSupremum,
    #[error("family is not directed")]
    NotDirected,
    #[error("the family is empty")]
    EmptyFamily,
    #[error("poset has no least element")]
    NotPointed,
    #[error("codomain of first map does not match domain of second")]
    ComposeMismatch,
    #[error("map tables refer to different posets")]
    DomainMismatch,
    #[error("level {level} out of range (truncation {max})")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("tower elements have different truncations ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("operation needs truncation >= 1")]
    TruncationTooSmall,
    #[error("level {level} would have {required} elements, over the budget of {budget}")]
    TabulationBudget {
        level: usize,
        required: usize,
        budget: usize,
    },
    #[error("level {0} is not tabulated")]
    NotTabulated(usize),
    #[error("function is not monotone: {0}")]
    MonotonicityViolation(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("subset escapes the union of the family (element {0} uncovered)")]
    CoverageViolation(usize),
    #[error("family not directed at depth {0}")]
    NotDirectedAtDepth(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
