//! Run configuration shared by every randomized entry point.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::drc::DEFAULT_ENUMERATION_CAP;
use crate::turan::DEFAULT_REMOVAL_BUDGET;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    /// Summary rows only; structures are always written as JSON.
    Csv,
}

/// Budgets for the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Subsets enumerated by extension and defect checks.
    pub enumeration: u64,
    /// Search nodes for the brute-force extremal and Ramsey oracles; `None` is unbounded.
    pub search_nodes: Option<u64>,
    /// Edge removals in the deletion constructions.
    pub removals: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            enumeration: DEFAULT_ENUMERATION_CAP,
            search_nodes: None,
            removals: DEFAULT_REMOVAL_BUDGET,
        }
    }
}

/// The seed alone determines every randomized run under a config; stage
/// seeds are derived from it with [`crate::rng::derive_seed`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Retry budget for each randomized stage.
    pub retries: usize,
    pub caps: Caps,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub paper_constants: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            retries: 16,
            caps: Caps::default(),
            output: None,
            format: OutputFormat::Json,
            paper_constants: false,
        }
    }
}
