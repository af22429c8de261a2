use thiserror::Error;

/// Errors shared by the tree types, codecs and pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The successor map has a vertex that never reaches the root; `cycle`
    /// lists one offending cycle in successor order.
    #[error("not a tree: cycle ({})", fmt_labels(.cycle))]
    CycleFound { cycle: Vec<usize> },

    /// `path` was asked for a vertex whose successor chain never reaches 0.
    #[error("no path from vertex {vertex} to the root")]
    NoPathToRoot { vertex: usize },

    /// An enumeration or determinant was requested above the configured cap.
    #[error("size {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    /// A sequence fed to a fast codec is not the naïve code of a tree.
    #[error("input is not the naive code of a tree")]
    NotATree,

    /// A weighted code token violates the code-space shape.
    #[error("malformed token: {0}")]
    MalformedToken(String),

    /// A pipeline walk ran past its step budget.
    #[error("involution walk exceeded the step budget of {budget}")]
    StepBudgetExceeded { budget: u64 },

    /// The cycle handed to a cycle-local operation does not satisfy its
    /// precondition.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The vertex list is not a cycle of the represented digraph.
    #[error("not a cycle of the represented digraph: ({})", fmt_labels(.0))]
    NotACycle(Vec<usize>),

    /// A forest failed validation.
    #[error("invalid forest: {0}")]
    InvalidForest(String),

    /// A forest code failed validation.
    #[error("malformed code: {0}")]
    MalformedCode(String),

    /// Text-format parse failure.
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_labels(cycle: &[usize]) -> String {
    cycle
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub type Result<T> = std::result::Result<T, Error>;
