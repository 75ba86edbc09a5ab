//! Edge colorings of complete uniform hypergraphs.

use itertools::Itertools;
use rand::Rng as _;
use serde::Serialize;

use crate::combinatorics::{binomial_usize, subset_rank};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rng::rng_from_seed;

/// A total map from the `k`-subsets of `[N]` to `[q]`; `colors` is indexed by
/// lexicographic subset rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    #[serde(rename = "N")]
    n: usize,
    k: usize,
    q: usize,
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(n: usize, k: usize, q: usize, colors: Vec<usize>) -> Result<Self> {
        if k == 0 || q == 0 {
            return Err(Error::Coloring(format!(
                "need k >= 1 and q >= 1, got k = {k}, q = {q}"
            )));
        }
        let expected = binomial_usize(n, k);
        if colors.len() != expected {
            return Err(Error::Coloring(format!(
                "{} colors given for C({n}, {k}) = {expected} edges",
                colors.len()
            )));
        }
        if let Some(i) = colors.iter().position(|&c| c >= q) {
            return Err(Error::Coloring(format!(
                "colors[{i}] = {} is not below q = {q}",
                colors[i]
            )));
        }
        Ok(Self { n, k, q, colors })
    }

    /// Colors each edge (in lexicographic order) by `f`.
    pub fn from_fn(
        n: usize,
        k: usize,
        q: usize,
        f: impl FnMut(&[Vertex]) -> usize,
    ) -> Result<Self> {
        let mut f = f;
        let colors = (0..n).combinations(k).map(|e| f(&e)).collect();
        Self::new(n, k, q, colors)
    }

    pub fn random(n: usize, k: usize, q: usize, seed: u64) -> Result<Self> {
        let mut rng = rng_from_seed(seed);
        Self::from_fn(n, k, q, |_| rng.gen_range(0..q.max(1)))
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Color of the sorted `k`-subset `e`.
    pub fn color_of(&self, e: &[Vertex]) -> usize {
        self.colors[subset_rank(self.n, e)]
    }

    /// The `k`-uniform hypergraph of edges with color `c`.
    pub fn class(&self, c: usize) -> Hypergraph {
        let edges = (0..self.n)
            .combinations(self.k)
            .zip(&self.colors)
            .filter(|&(_, &col)| col == c)
            .map(|(e, _)| e)
            .collect();
        Hypergraph::new(self.k, self.n, edges).expect("lexicographic subsets are valid edges")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_the_complete_hypergraph() {
        let f = EdgeColoring::random(6, 2, 3, 11).unwrap();
        let total: usize = (0..3).map(|c| f.class(c).num_edges()).sum();
        assert_eq!(total, 15);
        for e in (0..6).combinations(2) {
            assert!(f.class(f.color_of(&e)).contains_edge(&e));
        }
    }

    #[test]
    fn rejects_partial_or_out_of_range() {
        assert!(EdgeColoring::new(4, 2, 2, vec![0; 5]).is_err());
        assert!(EdgeColoring::new(4, 2, 2, vec![0, 0, 0, 0, 0, 2]).is_err());
        assert!(EdgeColoring::new(4, 2, 2, vec![0, 1, 0, 1, 0, 1]).is_ok());
    }
}
