//! Exhaustive engines for tiny instances: containment, Turán numbers and
//! Ramsey numbers.
//!
//! Containment is a backtracking search over the pattern's vertices. A
//! partial map is extended only while every edge of the pattern is mapped,
//! on its already placed vertices, onto a partial edge of the host. The
//! Turán and Ramsey searches add one host edge at a time and only look for
//! copies that use the new edge, so each copy is detected exactly when it
//! first appears.

use itertools::Itertools;
use serde::Serialize;

use crate::coloring::EdgeColoring;
use crate::combinatorics::binomial;
use crate::degeneracy::simultaneous_ordering;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// Read access to a host, as needed by the containment search.
pub trait Host {
    fn num_vertices(&self) -> usize;

    /// Whether the sorted set lies inside some edge.
    fn is_partial(&self, s: &[Vertex]) -> bool;

    /// Ascending vertices sharing an edge with `v`, when cheaply available.
    fn co_members(&self, _v: Vertex) -> Option<Vec<Vertex>> {
        None
    }
}

impl Host for Hypergraph {
    fn num_vertices(&self) -> usize {
        self.n()
    }

    fn is_partial(&self, s: &[Vertex]) -> bool {
        self.is_partial_edge(s)
    }

    fn co_members(&self, v: Vertex) -> Option<Vec<Vertex>> {
        Some(
            self.incident(v)
                .iter()
                .flat_map(|&ei| self.edges()[ei].iter().copied())
                .filter(|&u| u != v)
                .sorted_unstable()
                .dedup()
                .collect(),
        )
    }
}

/// A mutable `k`-uniform host on at most 24 vertices that counts, for every
/// vertex subset, how many present edges contain it.
#[derive(Clone, Debug)]
pub(crate) struct DenseHost {
    n: usize,
    k: usize,
    cover: Vec<u32>,
}

pub(crate) const DENSE_HOST_MAX_N: usize = 24;

impl DenseHost {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        assert!(
            n <= DENSE_HOST_MAX_N,
            "dense host limited to {DENSE_HOST_MAX_N} vertices"
        );
        Self {
            n,
            k,
            cover: vec![0; 1 << n],
        }
    }

    fn mask(s: &[Vertex]) -> usize {
        s.iter().fold(0, |m, &v| m | 1 << v)
    }

    fn update(&mut self, e: &[Vertex], add: bool) {
        let full = Self::mask(e);
        let mut sub = full;
        loop {
            if add {
                self.cover[sub] += 1;
            } else {
                self.cover[sub] -= 1;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
    }

    pub(crate) fn add(&mut self, e: &[Vertex]) {
        self.update(e, true);
    }

    pub(crate) fn remove(&mut self, e: &[Vertex]) {
        self.update(e, false);
    }
}

impl Host for DenseHost {
    fn num_vertices(&self) -> usize {
        self.n
    }

    fn is_partial(&self, s: &[Vertex]) -> bool {
        s.len() <= self.k && self.cover[Self::mask(s)] > 0
    }
}

/// An injective, edge-preserving map `V(H) → V(G)`; `map[x]` is the image
/// of pattern vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<Vertex>,
    pub part_respecting: bool,
}

impl Embedding {
    /// Injectivity, edge preservation and, when `part_respecting`, that
    /// each `W_j` lands in `V_j`.
    pub fn verify(&self, h: &Hypergraph, g: &Hypergraph) -> bool {
        if self.map.len() != h.n()
            || self.map.iter().any(|&v| v >= g.n())
            || !self.map.iter().all_unique()
        {
            return false;
        }
        if self.part_respecting {
            match (h.layout(), g.layout()) {
                (Some(hl), Some(gl)) if hl.num_parts() == gl.num_parts() => {
                    if (0..h.n()).any(|x| hl.part_of(x) != gl.part_of(self.map[x])) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        h.edges()
            .iter()
            .all(|e| g.contains_unsorted(&e.iter().map(|&x| self.map[x]).collect::<Vec<_>>()))
    }
}

/// A pattern prepared for repeated containment searches.
pub struct Pattern<'a> {
    h: &'a Hypergraph,
    order: Vec<Vertex>,
}

impl<'a> Pattern<'a> {
    /// Vertices are explored in simultaneous-ordering order, which keeps the
    /// number of traces each new vertex must satisfy small.
    pub fn new(h: &'a Hypergraph) -> Self {
        Self {
            h,
            order: simultaneous_ordering(h),
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.h
    }

    /// Searches for an embedding into `g` that extends `fixed` (pairs of
    /// pattern vertex, host vertex). `allowed`, when given, lists for each
    /// pattern vertex the host vertices it may use (ascending).
    pub fn search<G: Host>(
        &self,
        g: &G,
        fixed: &[(Vertex, Vertex)],
        allowed: Option<&[Vec<Vertex>]>,
    ) -> Option<Vec<Vertex>> {
        let h = self.h;
        if h.n() > g.num_vertices() {
            return None;
        }
        let mut order: Vec<Vertex> = fixed.iter().map(|&(x, _)| x).collect();
        order.extend(
            self.order
                .iter()
                .copied()
                .filter(|x| !fixed.iter().any(|&(f, _)| f == *x)),
        );
        let mut pos = vec![0; h.n()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        // traces[i]: for each pattern edge through order[i], its vertices
        // placed at positions <= i, as positions.
        let traces: Vec<Vec<Vec<usize>>> = order
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                h.incident(x)
                    .iter()
                    .map(|&ei| {
                        h.edges()[ei]
                            .iter()
                            .map(|&y| pos[y])
                            .filter(|&p| p <= i)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut state = SearchState {
            g,
            order: &order,
            traces: &traces,
            fixed,
            allowed,
            image: vec![usize::MAX; order.len()],
            used: vec![false; g.num_vertices()],
            scratch: Vec::with_capacity(h.k()),
        };
        if !state.extend(0) {
            return None;
        }
        let mut map = vec![0; h.n()];
        for (i, &x) in order.iter().enumerate() {
            map[x] = state.image[i];
        }
        Some(map)
    }
}

struct SearchState<'s, G> {
    g: &'s G,
    order: &'s [Vertex],
    traces: &'s [Vec<Vec<usize>>],
    fixed: &'s [(Vertex, Vertex)],
    allowed: Option<&'s [Vec<Vertex>]>,
    image: Vec<Vertex>,
    used: Vec<bool>,
    scratch: Vec<Vertex>,
}

impl<G: Host> SearchState<'_, G> {
    fn candidates(&self, i: usize) -> Vec<Vertex> {
        if i < self.fixed.len() {
            return vec![self.fixed[i].1];
        }
        let x = self.order[i];
        let anchor = self.traces[i]
            .iter()
            .flat_map(|t| t.iter())
            .find(|&&p| p < i);
        let base: Vec<Vertex> = match anchor.and_then(|&p| self.g.co_members(self.image[p])) {
            Some(list) => list,
            None => match self.allowed {
                Some(a) => return a[x].clone(),
                None => return (0..self.g.num_vertices()).collect(),
            },
        };
        match self.allowed {
            Some(a) => base
                .into_iter()
                .filter(|v| a[x].binary_search(v).is_ok())
                .collect(),
            None => base,
        }
    }

    fn consistent(&mut self, i: usize, v: Vertex) -> bool {
        for t in &self.traces[i] {
            self.scratch.clear();
            self.scratch
                .extend(t.iter().map(|&p| if p == i { v } else { self.image[p] }));
            self.scratch.sort_unstable();
            if !self.g.is_partial(&self.scratch) {
                return false;
            }
        }
        true
    }

    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        for v in self.candidates(i) {
            if v >= self.used.len() || self.used[v] || !self.consistent(i, v) {
                continue;
            }
            if let Some(a) = self.allowed {
                if i < self.fixed.len() && a[self.order[i]].binary_search(&v).is_err() {
                    continue;
                }
            }
            self.used[v] = true;
            self.image[i] = v;
            if self.extend(i + 1) {
                return true;
            }
            self.used[v] = false;
        }
        self.image[i] = usize::MAX;
        false
    }
}

/// A copy of `h` in `g`, or `None` after exhaustive search. With
/// `respect_parts`, pattern part `j` must map into host part `j`.
pub fn find_embedding(
    h: &Hypergraph,
    g: &Hypergraph,
    respect_parts: bool,
) -> Result<Option<Embedding>> {
    if h.k() != g.k() {
        return Err(Error::Uniformity {
            pattern: h.k(),
            host: g.k(),
        });
    }
    let allowed = if respect_parts {
        let hl = h.require_layout()?;
        let gl = g.require_layout()?;
        if hl.num_parts() != gl.num_parts() {
            return Err(Error::Layout(format!(
                "pattern has {} parts, host has {}",
                hl.num_parts(),
                gl.num_parts()
            )));
        }
        Some(
            (0..h.n())
                .map(|x| gl.part(hl.part_of(x)).to_vec())
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let map = Pattern::new(h).search(g, &[], allowed.as_deref());
    Ok(map.map(|map| Embedding {
        map,
        part_respecting: respect_parts,
    }))
}

/// Whether some copy of the pattern in `g` maps an edge onto `e`.
pub(crate) fn copy_through_edge<G: Host>(pattern: &Pattern<'_>, g: &G, e: &[Vertex]) -> bool {
    let h = pattern.hypergraph();
    h.edges().iter().any(|f| {
        e.iter().copied().permutations(e.len()).any(|img| {
            let fixed: Vec<(Vertex, Vertex)> = f.iter().copied().zip(img).collect();
            pattern.search(g, &fixed, None).is_some()
        })
    })
}

/// Result of an exact extremal search. When `exhaustive` is false the node
/// budget ran out and `value` is only a lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuranResult {
    pub value: usize,
    pub witness: Hypergraph,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Search space bound used when no budget is given.
pub const TURAN_EDGE_CAP: u128 = 28;

/// `ex(n, H)` by include/exclude search over the `k`-subsets of `[n]` in
/// lexicographic order, including an edge only when it creates no copy of
/// `h`, and pruning branches that cannot beat the best count found.
pub fn brute_force_turan(n: usize, h: &Hypergraph, budget: Option<u64>) -> Result<TuranResult> {
    let k = h.k();
    if h.is_empty() {
        return Err(Error::Argument(
            "pattern has no edges, so ex(n, H) is undefined".into(),
        ));
    }
    if n > DENSE_HOST_MAX_N {
        return Err(Error::Argument(format!(
            "n = {n} exceeds {DENSE_HOST_MAX_N}"
        )));
    }
    let m = binomial(n as u64, k as u64);
    if budget.is_none() && m > TURAN_EDGE_CAP {
        return Err(Error::BudgetExceeded {
            context: format!("C({n}, {k}) = {m} candidate edges"),
            limit: TURAN_EDGE_CAP as u64,
        });
    }
    let candidates: Vec<Vec<Vertex>> = (0..n).combinations(k).collect();
    let pattern = Pattern::new(h);
    let mut search = TuranSearch {
        pattern: &pattern,
        candidates: &candidates,
        host: DenseHost::new(n, k),
        current: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget: budget.unwrap_or(u64::MAX),
        exhausted: false,
    };
    search.run(0);
    let witness = Hypergraph::new(
        k,
        n,
        search.best.iter().map(|&i| candidates[i].clone()).collect(),
    )?;
    Ok(TuranResult {
        value: search.best.len(),
        witness,
        exhaustive: !search.exhausted,
        nodes: search.nodes,
    })
}

struct TuranSearch<'s> {
    pattern: &'s Pattern<'s>,
    candidates: &'s [Vec<Vertex>],
    host: DenseHost,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl TuranSearch<'_> {
    fn run(&mut self, i: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if i == self.candidates.len()
            || self.current.len() + (self.candidates.len() - i) <= self.best.len()
        {
            return;
        }
        let e = &self.candidates[i];
        self.host.add(e);
        if !copy_through_edge(self.pattern, &self.host, e) {
            self.current.push(i);
            self.run(i + 1);
            self.current.pop();
        }
        self.host.remove(e);
        self.run(i + 1);
    }
}

/// Outcome of an exact Ramsey search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    /// The Ramsey number, or `None` when no `N ≤ n_max` forces a copy.
    pub value: Option<usize>,
    pub n_max: usize,
    /// A coloring avoiding monochromatic copies on the largest `N` that
    /// failed with at least `v(H)` vertices.
    pub avoiding: Option<EdgeColoring>,
    pub nodes: u64,
}

/// `r(H; q)`: the least `N ≤ n_max` such that every `q`-coloring of
/// `K_N^{(k)}` has a monochromatic copy of `h`. Colorings are enumerated
/// edge by edge in lexicographic order; the first edge gets color 0 and
/// every edge uses at most one color beyond those already used, which
/// removes the color symmetry. A branch dies as soon as the new edge
/// completes a monochromatic copy.
pub fn brute_force_ramsey(
    h: &Hypergraph,
    q: usize,
    n_max: usize,
    budget: Option<u64>,
) -> Result<RamseyResult> {
    if q < 2 {
        return Err(Error::Argument(format!("need q >= 2 colors, got {q}")));
    }
    if n_max > DENSE_HOST_MAX_N {
        return Err(Error::Argument(format!(
            "N_max = {n_max} exceeds {DENSE_HOST_MAX_N}"
        )));
    }
    let k = h.k();
    if h.is_empty() {
        let value = (h.n() <= n_max).then_some(h.n());
        return Ok(RamseyResult {
            value,
            n_max,
            avoiding: None,
            nodes: 0,
        });
    }
    let pattern = Pattern::new(h);
    let mut nodes = 0u64;
    let mut avoiding = None;
    for n in h.n().max(k)..=n_max {
        let candidates: Vec<Vec<Vertex>> = (0..n).combinations(k).collect();
        let mut search = RamseySearch {
            pattern: &pattern,
            candidates: &candidates,
            classes: vec![DenseHost::new(n, k); q],
            colors: Vec::with_capacity(candidates.len()),
            nodes: 0,
            budget: budget.map_or(u64::MAX, |b| b.saturating_sub(nodes)),
            exhausted: false,
        };
        let found = search.run(0, 0);
        nodes += search.nodes;
        if search.exhausted {
            return Err(Error::BudgetExceeded {
                context: format!("colorings of K_{n}^({k})"),
                limit: budget.unwrap_or(0),
            });
        }
        if !found {
            return Ok(RamseyResult {
                value: Some(n),
                n_max,
                avoiding,
                nodes,
            });
        }
        avoiding = Some(EdgeColoring::new(n, k, q, search.colors)?);
    }
    Ok(RamseyResult {
        value: None,
        n_max,
        avoiding,
        nodes,
    })
}

struct RamseySearch<'s> {
    pattern: &'s Pattern<'s>,
    candidates: &'s [Vec<Vertex>],
    classes: Vec<DenseHost>,
    colors: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl RamseySearch<'_> {
    /// True when a coloring avoiding monochromatic copies exists below this
    /// node; `colors` then holds it.
    fn run(&mut self, i: usize, used: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        if i == self.candidates.len() {
            return true;
        }
        let e = &self.candidates[i];
        for c in 0..self.classes.len().min(used + 1) {
            self.classes[c].add(e);
            if !copy_through_edge(self.pattern, &self.classes[c], e) {
                self.colors.push(c);
                if self.run(i + 1, used.max(c + 1)) {
                    return true;
                }
                self.colors.pop();
            }
            self.classes[c].remove(e);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// The first color class, in ascending color order, containing a copy of
/// `h`, with that copy.
pub fn find_monochromatic_copy(
    f: &EdgeColoring,
    h: &Hypergraph,
) -> Result<Option<(usize, Embedding)>> {
    for c in 0..f.q() {
        if let Some(emb) = find_embedding(h, &f.class(c), false)? {
            return Ok(Some((c, emb)));
        }
    }
    Ok(None)
}
