//! Skeletal degeneracy, dependent random choice and random greedy embeddings
//! for uniform hypergraphs, with exhaustive oracles for small instances.

// Index loops mirror the math: several arrays are indexed by the same part.
#![allow(clippy::needless_range_loop)]

pub mod coloring;
pub mod combinatorics;
pub mod config;
pub mod defect;
pub mod degeneracy;
pub mod drc;
pub mod error;
pub mod generators;
pub mod greedy;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod ramsey;
pub mod rng;
pub mod skeleton;
pub mod turan;

pub use coloring::EdgeColoring;
pub use defect::Defect;
pub use degeneracy::{d_max, degeneracy, skeletal_degeneracy, DegeneracyCertificate};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, PartiteLayout, Vertex};
pub use oracle::{find_embedding, Embedding};
pub use skeleton::{partial_edges, skeleton, PartialEdgeSet};
