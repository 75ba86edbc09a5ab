//! The random greedy embedding: setup construction, the greedy process and
//! its validity test, the pattern and host partitions, and the end-to-end
//! pipeline for linear Turán bounds.

mod algorithm;
mod partition;
mod pipeline;
mod setup;

pub use algorithm::{
    check_embedding_conditions, conditions_hold, random_greedy_embed, Case, GreedyRun,
};
pub use partition::*;
pub use pipeline::*;
pub use setup::{build_setup, build_setup_with_classes, forward_neighbors, EmbeddingSetup};
