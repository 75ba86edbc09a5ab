//! Deterministic workloads shared by the benchmarks.

use rand::Rng;
use skeletal::generators::complete_kpartite;
use skeletal::rng::rng_from_seed;
use skeletal::Hypergraph;

/// Complete `k`-partite host with parts of size `m`, each edge kept with
/// probability `p`. The layout survives the filter.
pub fn dense_partite(k: usize, m: usize, p: f64, seed: u64) -> Hypergraph {
    let mut rng = rng_from_seed(seed);
    complete_kpartite(&vec![m; k])
        .expect("k >= 1")
        .filter_edges(|_| rng.gen_bool(p))
}

/// `G(n, p)` as a 2-uniform hypergraph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Hypergraph {
    skeletal::generators::erdos_renyi(2, n, p, seed).expect("p in range")
}
