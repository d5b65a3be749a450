use thiserror::Error;

/// Everything that can go wrong when building or querying a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("label {label} appears {count} times, expected 2")]
    LabelCount { label: usize, count: usize },
    #[error("label {label}: signs disagree")]
    SignMismatch { label: usize },
    #[error("label {label}: needs one O and one U occurrence")]
    RoleMismatch { label: usize },
    #[error("label {label}: singular marker must be on both occurrences")]
    MarkerMismatch { label: usize },
    #[error("no arrow with id {0}")]
    InvalidArrow(usize),
    #[error("arrow {0} cannot be paired with itself")]
    SameArrow(usize),
    #[error("arrows {0} and {1} intersect")]
    Intersecting(usize, usize),
    #[error("arrows {0} and {1} do not intersect")]
    Disjoint(usize, usize),
    #[error("diagram has singular arrows")]
    Singular,
    #[error("diagram has no singular arrows")]
    NotSingular,
    #[error("position {position} out of range 0..={max}")]
    Position { position: usize, max: usize },
    #[error("resolution vector has length {got}, expected {expected}")]
    ResolutionLength { got: usize, expected: usize },
    #[error("indices {0},{1},{2} are not pairwise distinct")]
    IndicesNotDistinct(u64, u64, u64),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("homology classes violate the functional's hypothesis")]
    Hypothesis,
    #[error("move does not apply: {0}")]
    MoveMismatch(String),
    #[error("labeled diagram format, line {line}: {message}")]
    Format { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
