use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Randomized procedures that may legitimately fail (retry budgets running
/// out) report that through their own `Failed` result types instead.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("index {index} out of range [{lo}, {hi})")]
    Index { index: usize, lo: usize, hi: usize },

    #[error("partial edge of size {size} has no room for an extension in a {k}-uniform host")]
    Size { size: usize, k: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("layout error: {0}")]
    Layout(String),

    #[error("coloring error: {0}")]
    Coloring(String),

    #[error("uniformity mismatch: pattern is {pattern}-uniform, host is {host}-uniform")]
    Uniformity { pattern: usize, host: usize },

    #[error("budget exceeded in {context}: limit {limit}")]
    BudgetExceeded { context: String, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("setup error: {0}")]
    Setup(String),

    #[error("degeneracy error: pattern has d_1 = {actual} > {bound}")]
    Degeneracy { actual: usize, bound: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
