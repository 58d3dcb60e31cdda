use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The quadruple `(m, n; s, t)` violates its domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An auxiliary index (`k`, `v`, `alpha`, `i`) lies outside its range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// No admissible `k` exists for the closed-form bound.
    #[error("empty range: {0}")]
    EmptyRange(String),

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    /// The brute-force search would exceed the tractability guard.
    #[error("search space too large: {0}")]
    Intractable(String),

    /// The node budget ran out; `best` is the largest edge count seen.
    #[error("node budget exhausted after {nodes} nodes; best lower bound found {best}")]
    BudgetExhausted { nodes: u64, best: u64 },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
