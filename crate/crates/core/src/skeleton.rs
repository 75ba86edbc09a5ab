//! Skeletons, partial edges and common neighborhoods.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// The `i`-skeleton: the `(i+1)`-uniform hypergraph of all `(i+1)`-subsets
/// of edges of `h`, on the same vertex set. The layout is kept.
pub fn skeleton(h: &Hypergraph, i: usize) -> Result<Hypergraph> {
    if i >= h.k() {
        return Err(Error::Index {
            index: i,
            lo: 0,
            hi: h.k(),
        });
    }
    if i + 1 == h.k() {
        return Ok(h.clone());
    }
    let edges = h
        .edges()
        .iter()
        .flat_map(|e| e.iter().copied().combinations(i + 1));
    let out = Hypergraph::from_edges_dedup(i + 1, h.n(), edges.collect::<Vec<_>>())
        .expect("subsets of valid edges are valid");
    match h.layout() {
        Some(l) => Ok(out
            .with_layout(l.clone())
            .expect("subsets of proper edges stay proper")),
        None => Ok(out),
    }
}

/// A downward-closed family of vertex sets (each stored sorted).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialEdgeSet {
    members: BTreeSet<Vec<Vertex>>,
}

impl PartialEdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Family from explicit members; members are sorted but closure is not
    /// enforced, so this can also represent an arbitrary family `E ⊆ E*(G)`.
    pub fn from_members(members: impl IntoIterator<Item = Vec<Vertex>>) -> Self {
        Self {
            members: members
                .into_iter()
                .map(|mut m| {
                    m.sort_unstable();
                    m
                })
                .collect(),
        }
    }

    pub fn insert(&mut self, mut s: Vec<Vertex>) -> bool {
        s.sort_unstable();
        self.members.insert(s)
    }

    pub fn contains(&self, s: &[Vertex]) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<Vertex>> {
        self.members.iter()
    }

    pub fn is_subfamily_of(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.members
            .iter()
            .all(|m| (0..m.len()).all(|skip| self.members.contains(&without(m, skip))))
    }
}

fn without(s: &[Vertex], skip: usize) -> Vec<Vertex> {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

/// `E*(G)`: every subset of every edge. Contains `∅` iff `G` has an edge.
pub fn partial_edges(g: &Hypergraph) -> PartialEdgeSet {
    let mut out = PartialEdgeSet::new();
    for e in g.edges() {
        for s in e.iter().copied().powerset() {
            out.members.insert(s);
        }
    }
    out
}

/// `PE_Q(G)`: the partial edges of `G` contained in `q`.
pub fn pe_restricted(g: &Hypergraph, q: &[Vertex]) -> PartialEdgeSet {
    let q: Vec<Vertex> = q.iter().copied().sorted_unstable().dedup().collect();
    let mut out = PartialEdgeSet::new();
    for size in 0..=g.k().min(q.len()) {
        for s in q.iter().copied().combinations(size) {
            if g.is_partial_edge(&s) {
                out.members.insert(s);
            }
        }
    }
    out
}

/// `N(E; G)`: vertices `v` with `v ∉ e` and `e ∪ {v} ∈ E*(G)` for every
/// `e ∈ E`. An empty family is satisfied by every vertex.
pub fn common_neighborhood(g: &Hypergraph, family: &PartialEdgeSet) -> Result<Vec<Vertex>> {
    if let Some(m) = family.iter().find(|m| m.len() >= g.k()) {
        return Err(Error::Size {
            size: m.len(),
            k: g.k(),
        });
    }
    let mut scratch = Vec::with_capacity(g.k());
    Ok((0..g.n())
        .filter(|&v| {
            family.iter().all(|e| {
                if e.contains(&v) {
                    return false;
                }
                scratch.clear();
                scratch.extend_from_slice(e);
                let pos = scratch.partition_point(|&x| x < v);
                scratch.insert(pos, v);
                g.is_partial_edge(&scratch)
            })
        })
        .collect())
}

/// `N(PE_Q(G); G)` computed through the maximal members of `PE_Q(G)` only,
/// which suffices because the family is downward closed. Sorted ascending.
pub fn set_neighborhood(g: &Hypergraph, q: &[Vertex]) -> Vec<Vertex> {
    let q: Vec<Vertex> = q.iter().copied().sorted_unstable().dedup().collect();
    let mut members: Vec<Vec<Vertex>> = Vec::new();
    for size in (0..=g.k().min(q.len())).rev() {
        for s in q.iter().copied().combinations(size) {
            if g.is_partial_edge(&s) && !members.iter().any(|m| is_subset(&s, m)) {
                members.push(s);
            }
        }
    }
    if members.is_empty() {
        return (0..g.n()).collect();
    }
    if members.iter().any(|m| m.len() >= g.k()) {
        return Vec::new();
    }
    let first = &members[0];
    let mut candidates: Vec<Vertex> = if first.is_empty() {
        g.non_isolated()
    } else {
        g.incident(first[0])
            .iter()
            .map(|&ei| &g.edges()[ei])
            .filter(|e| is_subset(first, e))
            .flat_map(|e| e.iter().copied())
            .sorted_unstable()
            .dedup()
            .collect()
    };
    let mut scratch = Vec::with_capacity(g.k());
    candidates.retain(|&v| {
        members.iter().all(|m| {
            if m.binary_search(&v).is_ok() {
                return false;
            }
            scratch.clear();
            scratch.extend_from_slice(m);
            let pos = scratch.partition_point(|&x| x < v);
            scratch.insert(pos, v);
            g.is_partial_edge(&scratch)
        })
    });
    candidates
}

/// Both slices sorted ascending.
pub(crate) fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}
