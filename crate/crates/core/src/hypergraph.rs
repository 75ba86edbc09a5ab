//! Uniform hypergraphs over dense vertex ids, with an optional partite layout.

use std::collections::HashSet;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A partition `V_1 ⊔ ⋯ ⊔ V_K` of `[0, n)`.
///
/// Parts are stored sorted ascending. Empty parts are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteLayout {
    parts: Vec<Vec<Vertex>>,
    part_of: Vec<usize>,
}

impl PartiteLayout {
    pub fn new(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return Err(Error::Layout(format!(
                        "part {i} contains vertex {v} >= n = {n}"
                    )));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::Layout(format!(
                        "vertex {v} lies in parts {} and {i}",
                        part_of[v]
                    )));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Layout(format!(
                "vertex {v} is not covered by any part"
            )));
        }
        Ok(Self { parts, part_of })
    }

    /// Layout from a vertex → part assignment.
    pub fn from_assignment(part_of: &[usize], num_parts: usize) -> Result<Self> {
        let mut parts = vec![Vec::new(); num_parts];
        for (v, &p) in part_of.iter().enumerate() {
            if p >= num_parts {
                return Err(Error::Layout(format!(
                    "vertex {v} assigned to part {p} >= {num_parts}"
                )));
            }
            parts[p].push(v);
        }
        Self::new(part_of.len(), parts)
    }

    /// Consecutive blocks of the given sizes: part 0 is `[0, s_0)`, and so on.
    pub fn consecutive(sizes: &[usize]) -> Self {
        let mut parts = Vec::with_capacity(sizes.len());
        let mut part_of = Vec::new();
        let mut next = 0;
        for (i, &s) in sizes.iter().enumerate() {
            parts.push((next..next + s).collect());
            part_of.extend(std::iter::repeat_n(i, s));
            next += s;
        }
        Self { parts, part_of }
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.part_of.len()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[Vertex] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v]
    }

    /// `V_{-t}`: every vertex outside part `t`, ascending.
    pub fn outside(&self, t: usize) -> Vec<Vertex> {
        (0..self.part_of.len())
            .filter(|&v| self.part_of[v] != t)
            .collect()
    }

    /// True when every part has the same size.
    pub fn is_balanced(&self) -> bool {
        self.parts.iter().map(Vec::len).all_equal()
    }
}

/// A `k`-uniform hypergraph on vertices `0..n`.
///
/// Every edge is stored sorted ascending and the edge list itself is kept in
/// lexicographic order, so two hypergraphs with the same edge set compare
/// equal and serialize identically. When a layout is attached every edge
/// meets each part at most once.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
    edge_set: HashSet<Vec<Vertex>>,
    incidence: Vec<Vec<usize>>,
    layout: Option<PartiteLayout>,
    partials: OnceLock<HashSet<Vec<Vertex>>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.n == other.n
            && self.edges == other.edges
            && self.layout == other.layout
    }
}

impl Eq for Hypergraph {}

fn canonical_edge(k: usize, n: usize, mut edge: Vec<Vertex>, index: usize) -> Result<Vec<Vertex>> {
    if edge.len() != k {
        return Err(Error::InvalidHypergraph(format!(
            "edge {index} has {} vertices, expected {k}",
            edge.len()
        )));
    }
    edge.sort_unstable();
    if let Some(&v) = edge.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidHypergraph(format!(
            "edge {index} contains vertex {v} >= n = {n}"
        )));
    }
    if edge.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidHypergraph(format!(
            "edge {index} repeats a vertex"
        )));
    }
    Ok(edge)
}

impl Hypergraph {
    /// Strict constructor: rejects malformed and duplicate edges.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidHypergraph(
                "uniformity must be at least 1".into(),
            ));
        }
        let mut canon = Vec::with_capacity(edges.len());
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let e = canonical_edge(k, n, e, i)?;
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {i} {e:?} is a duplicate"
                )));
            }
            canon.push(e);
        }
        Ok(Self::from_canonical(k, n, canon, seen))
    }

    /// Like [`Hypergraph::new`] but silently merges duplicate edges.
    pub fn from_edges_dedup(
        k: usize,
        n: usize,
        edges: impl IntoIterator<Item = Vec<Vertex>>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidHypergraph(
                "uniformity must be at least 1".into(),
            ));
        }
        let mut canon = Vec::new();
        let mut seen = HashSet::new();
        for (i, e) in edges.into_iter().enumerate() {
            let e = canonical_edge(k, n, e, i)?;
            if seen.insert(e.clone()) {
                canon.push(e);
            }
        }
        Ok(Self::from_canonical(k, n, canon, seen))
    }

    pub fn empty(k: usize, n: usize) -> Self {
        assert!(k >= 1, "uniformity must be at least 1");
        Self::from_canonical(k, n, Vec::new(), HashSet::new())
    }

    fn from_canonical(
        k: usize,
        n: usize,
        mut edges: Vec<Vec<Vertex>>,
        edge_set: HashSet<Vec<Vertex>>,
    ) -> Self {
        edges.sort_unstable();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Self {
            k,
            n,
            edges,
            edge_set,
            incidence,
            layout: None,
            partials: OnceLock::new(),
        }
    }

    /// Attaches a layout, checking that every edge meets each part at most once.
    pub fn with_layout(mut self, layout: PartiteLayout) -> Result<Self> {
        if layout.num_vertices() != self.n {
            return Err(Error::Layout(format!(
                "layout covers {} vertices, hypergraph has {}",
                layout.num_vertices(),
                self.n
            )));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let parts: Vec<usize> = e
                .iter()
                .map(|&v| layout.part_of(v))
                .sorted_unstable()
                .collect();
            if parts.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Layout(format!(
                    "edge {i} {e:?} meets part {} twice",
                    parts[0]
                )));
            }
        }
        self.layout = Some(layout);
        Ok(self)
    }

    pub fn without_layout(mut self) -> Self {
        self.layout = None;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn layout(&self) -> Option<&PartiteLayout> {
        self.layout.as_ref()
    }

    pub fn require_layout(&self) -> Result<&PartiteLayout> {
        self.layout
            .as_ref()
            .ok_or_else(|| Error::Layout("hypergraph has no partite layout".into()))
    }

    /// Layout with exactly `k` parts in which every edge is transversal.
    pub fn require_transversal_layout(&self) -> Result<&PartiteLayout> {
        let layout = self.require_layout()?;
        if layout.num_parts() != self.k {
            return Err(Error::Layout(format!(
                "expected {} parts for a {}-uniform partite hypergraph, found {}",
                self.k,
                self.k,
                layout.num_parts()
            )));
        }
        Ok(layout)
    }

    /// Membership of a sorted vertex list.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edge_set.contains(edge)
    }

    /// Membership of an arbitrary vertex list (sorted internally).
    pub fn contains_unsorted(&self, edge: &[Vertex]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edge_set.contains(&e)
    }

    /// Indices into [`Hypergraph::edges`] of the edges containing `v`.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.incidence[v].is_empty()
    }

    pub fn non_isolated(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| !self.is_isolated(v)).collect()
    }

    fn partial_index(&self) -> &HashSet<Vec<Vertex>> {
        self.partials.get_or_init(|| {
            let mut set = HashSet::new();
            for e in &self.edges {
                for s in e.iter().copied().powerset() {
                    set.insert(s);
                }
            }
            set
        })
    }

    /// Whether the sorted vertex list is a subset of some edge. The empty
    /// set counts as a partial edge exactly when there is at least one edge.
    pub fn is_partial_edge(&self, s: &[Vertex]) -> bool {
        if s.len() > self.k {
            return false;
        }
        if s.len() == self.k {
            return self.contains_edge(s);
        }
        self.partial_index().contains(s)
    }

    /// The number of distinct partial edges, `∅` included.
    pub fn num_partial_edges(&self) -> usize {
        self.partial_index().len()
    }

    /// Same vertex set and layout, keeping the edges selected by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[Vertex]) -> bool) -> Self {
        let edges: Vec<Vec<Vertex>> = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        let set = edges.iter().cloned().collect();
        let mut out = Self::from_canonical(self.k, self.n, edges, set);
        out.layout = self.layout.clone();
        out
    }

    /// Sub-hypergraph induced on `vertices`, relabelled to `0..vertices.len()`
    /// in the given order. Returns the relabelled hypergraph; the layout, if
    /// any, is restricted (keeping the part count).
    pub fn induced(&self, vertices: &[Vertex]) -> Self {
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| new_id[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| new_id[v]).sorted_unstable().collect())
            .collect();
        let set = edges.iter().cloned().collect();
        let mut out = Self::from_canonical(self.k, vertices.len(), edges, set);
        if let Some(layout) = &self.layout {
            let assignment: Vec<usize> = vertices.iter().map(|&v| layout.part_of(v)).collect();
            out.layout = Some(
                PartiteLayout::from_assignment(&assignment, layout.num_parts())
                    .expect("restriction of a valid layout is valid"),
            );
        }
        out
    }

    /// Drops isolated vertices. Returns the compacted hypergraph and, for
    /// each new vertex, its original id.
    pub fn without_isolated(&self) -> (Self, Vec<Vertex>) {
        let keep = self.non_isolated();
        (self.induced(&keep), keep)
    }

    pub fn edge_set(&self) -> &HashSet<Vec<Vertex>> {
        &self.edge_set
    }
}
