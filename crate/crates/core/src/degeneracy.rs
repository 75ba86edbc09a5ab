//! Degeneracy by min-degree peeling, skeletal degeneracies, the simultaneous
//! ordering and the edge-count cross-check.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::Result;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::skeleton::skeleton;

/// Both halves of the degeneracy min-max.
///
/// `order` lists vertices so that each one is the highest-ordered vertex of
/// at most `value` edges; `witness` is a vertex set whose induced
/// sub-hypergraph has minimum degree `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyCertificate {
    pub order: Vec<Vertex>,
    pub value: usize,
    pub witness: Vec<Vertex>,
}

impl DegeneracyCertificate {
    /// Max over vertices of the number of edges in which it comes last.
    pub fn max_back_degree(h: &Hypergraph, order: &[Vertex]) -> usize {
        let mut pos = vec![0; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut back = vec![0usize; h.n()];
        for e in h.edges() {
            let last = *e
                .iter()
                .max_by_key(|&&v| pos[v])
                .expect("edges are nonempty");
            back[last] += 1;
        }
        back.into_iter().max().unwrap_or(0)
    }

    /// Minimum degree of the sub-hypergraph induced on `vertices`.
    pub fn induced_min_degree(h: &Hypergraph, vertices: &[Vertex]) -> usize {
        if vertices.is_empty() {
            return 0;
        }
        let mut alive = vec![false; h.n()];
        for &v in vertices {
            alive[v] = true;
        }
        vertices
            .iter()
            .map(|&v| {
                h.incident(v)
                    .iter()
                    .filter(|&&ei| h.edges()[ei].iter().all(|&u| alive[u]))
                    .count()
            })
            .min()
            .unwrap_or(0)
    }

    /// Checks the ordering bound, the witness bound, and that `order` is a
    /// permutation of the vertex set.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let mut seen = vec![false; h.n()];
        if self.order.len() != h.n()
            || self
                .order
                .iter()
                .any(|&v| v >= h.n() || std::mem::replace(&mut seen[v], true))
        {
            return false;
        }
        Self::max_back_degree(h, &self.order) <= self.value
            && (self.value == 0 || Self::induced_min_degree(h, &self.witness) >= self.value)
    }
}

/// Min-degree peeling with lowest-id tie-break.
pub fn degeneracy(h: &Hypergraph) -> DegeneracyCertificate {
    let n = h.n();
    let mut deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut edge_alive = vec![true; h.num_edges()];
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut peel = Vec::with_capacity(n);
    let mut value = 0;
    let mut witness_at = 0;
    while let Some((d, v)) = queue.pop_first() {
        if d > value || peel.is_empty() {
            if d > value {
                value = d;
            }
            witness_at = peel.len();
        }
        peel.push(v);
        alive[v] = false;
        for &ei in h.incident(v) {
            if !std::mem::replace(&mut edge_alive[ei], false) {
                continue;
            }
            for &u in &h.edges()[ei] {
                if u != v && alive[u] {
                    queue.remove(&(deg[u], u));
                    deg[u] -= 1;
                    queue.insert((deg[u], u));
                }
            }
        }
    }
    let mut witness: Vec<Vertex> = peel[witness_at..].to_vec();
    witness.sort_unstable();
    peel.reverse();
    DegeneracyCertificate {
        order: peel,
        value,
        witness,
    }
}

/// `d_i(H)` with its certificate: the degeneracy of the `i`-skeleton.
pub fn skeletal_degeneracy(h: &Hypergraph, i: usize) -> Result<DegeneracyCertificate> {
    Ok(degeneracy(&skeleton(h, i)?))
}

/// `d_1(H)`; for 1-uniform input this is ordinary degeneracy.
pub fn d1(h: &Hypergraph) -> usize {
    if h.k() < 2 {
        return degeneracy(h).value;
    }
    skeletal_degeneracy(h, 1).expect("1 < k").value
}

/// `d_max(H) = max_{1 ≤ i < k} d_i(H)`; zero when `k < 2`.
pub fn d_max(h: &Hypergraph) -> usize {
    (1..h.k())
        .map(|i| skeletal_degeneracy(h, i).expect("i < k").value)
        .max()
        .unwrap_or(0)
}

/// For each position `i` of `order`, the number of distinct traces
/// `e ∩ {v_1..v_i}` that contain `v_i`.
pub fn trace_counts(h: &Hypergraph, order: &[Vertex]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; h.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            h.incident(v)
                .iter()
                .map(|&ei| {
                    h.edges()[ei]
                        .iter()
                        .copied()
                        .filter(|&u| pos[u] <= i)
                        .collect::<Vec<_>>()
                })
                .collect::<HashSet<_>>()
                .len()
        })
        .collect()
}

/// An ordering in which every vertex closes at most `k²·d_max(H)` distinct
/// traces. Built back to front: the next vertex placed is the one of the
/// remaining set `U` lying in the fewest distinct traces `e ∩ U`, ties to
/// the lowest id.
pub fn simultaneous_ordering(h: &Hypergraph) -> Vec<Vertex> {
    let n = h.n();
    let mut remaining = vec![true; n];
    let mut back_to_front = Vec::with_capacity(n);
    for _ in 0..n {
        let traces: HashSet<Vec<Vertex>> = h
            .edges()
            .iter()
            .map(|e| {
                e.iter()
                    .copied()
                    .filter(|&u| remaining[u])
                    .collect::<Vec<_>>()
            })
            .filter(|t| !t.is_empty())
            .collect();
        let mut count = vec![0usize; n];
        for t in &traces {
            for &u in t {
                count[u] += 1;
            }
        }
        let v = (0..n)
            .filter(|&v| remaining[v])
            .min_by_key(|&v| (count[v], v))
            .expect("a vertex remains");
        remaining[v] = false;
        back_to_front.push(v);
    }
    back_to_front.reverse();
    back_to_front
}

/// `e(H) ≤ d_1(H)^{k-1}·n`; always true, exists to cross-check the two
/// computations against each other.
pub fn edge_count_bound_check(h: &Hypergraph) -> bool {
    let d = d1(h) as u128;
    let bound = d
        .saturating_pow(h.k().saturating_sub(1) as u32)
        .saturating_mul(h.n() as u128);
    h.num_edges() as u128 <= bound
}

/// The maximal sub-hypergraph with minimum degree at least `d`, as the list
/// of surviving vertices (ascending). Empty when no such core exists.
pub fn min_degree_core(h: &Hypergraph, d: usize) -> Vec<Vertex> {
    let n = h.n();
    let mut deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut edge_alive = vec![true; h.num_edges()];
    let mut stack: Vec<Vertex> = (0..n).filter(|&v| deg[v] < d).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &ei in h.incident(v) {
            if !std::mem::replace(&mut edge_alive[ei], false) {
                continue;
            }
            for &u in &h.edges()[ei] {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] < d {
                        stack.push(u);
                    }
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}
