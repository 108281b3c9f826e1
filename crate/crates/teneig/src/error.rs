use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A single constraint broken by a would-be transition tensor.
#[derive(Debug, Clone, PartialEq)]
pub enum TransitionViolation {
    /// Entry below zero (index is 0-based).
    NegativeEntry { index: Vec<usize>, value: f64 },
    /// Entry above one.
    EntryAboveOne { index: Vec<usize>, value: f64 },
    /// Sum over the first index for the fixed tail `(k2, …, km)` is not 1.
    ColumnSum { tail: Vec<usize>, sum: f64 },
}

impl std::fmt::Display for TransitionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransitionViolation::NegativeEntry { index, value } => {
                write!(f, "negative entry {value} at {index:?}")
            }
            TransitionViolation::EntryAboveOne { index, value } => {
                write!(f, "entry {value} > 1 at {index:?}")
            }
            TransitionViolation::ColumnSum { tail, sum } => {
                write!(f, "column {tail:?} sums to {sum}, expected 1")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector has length {got}, tensor dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("multi-index {index:?} out of range for dimension {dim}")]
    IndexOutOfRange { index: Vec<usize>, dim: usize },

    #[error("multi-index has {got} components, tensor order is {expected}")]
    IndexLength { expected: usize, got: usize },

    #[error("non-finite value {value} at {index:?}")]
    NonFiniteValue { index: Vec<usize>, value: f64 },

    #[error("tensor order must be at least {min}, got {order}")]
    OrderTooSmall { order: usize, min: usize },

    #[error("tensor dimension must be at least 1")]
    DimTooSmall,

    #[error("operation supports dimension up to {max}, tensor has dimension {dim}")]
    UnsupportedDim { dim: usize, max: usize },

    #[error("operation requires dimension {required}, tensor has dimension {got}")]
    RequiresDim { required: usize, got: usize },

    #[error("operation requires even order, got {order}")]
    OddOrder { order: usize },

    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape { rows: usize, cols: usize, expected: usize },

    #[error("input tensor is zero")]
    ZeroTensor,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("tensor has a negative entry {value} at {index:?}")]
    NotNonnegative { index: Vec<usize>, value: f64 },

    #[error("vector component {component} is not strictly positive")]
    NonPositiveVector { component: usize },

    #[error("no iterate reached the residual tolerance after {iterations} iterations (best residual {best_residual:.3e})")]
    NonConvergence { iterations: usize, best_residual: f64 },

    #[error("invalid transition tensor: {}", format_violations(.0))]
    InvalidTransition(Vec<TransitionViolation>),

    #[error("history holds {got} distributions, chain of order {order} needs {expected}")]
    InvalidHistory { order: usize, expected: usize, got: usize },

    #[error("not a probability vector: {0}")]
    NotProbability(String),

    #[error("edge {edge:?} repeats vertex {vertex}")]
    RepeatedVertex { edge: Vec<usize>, vertex: usize },

    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    EdgeSize { edge: Vec<usize>, expected: usize, got: usize },

    #[error("rank-one solver failed at term {term}: {source}")]
    SsbraFailed {
        term: usize,
        partial: Box<crate::rankone::SsbraResult>,
        #[source]
        source: Box<Error>,
    },
}

fn format_violations(violations: &[TransitionViolation]) -> String {
    let shown: Vec<String> = violations.iter().take(8).map(|v| v.to_string()).collect();
    let mut s = shown.join("; ");
    if violations.len() > 8 {
        s.push_str(&format!("; … {} more", violations.len() - 8));
    }
    s
}
