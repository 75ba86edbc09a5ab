//! Constructions of the named hypergraph families and the two augmentations
//! used to reduce embedding problems to partite ones.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartiteLayout, Vertex};
use crate::rng::rng_from_seed;

/// `K^{(k)}_{s_1,…,s_k}` on consecutive parts.
pub fn complete_kpartite(sizes: &[usize]) -> Result<Hypergraph> {
    if sizes.len() < 2 {
        return Err(Error::Argument(format!(
            "need at least 2 parts, got {}",
            sizes.len()
        )));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::Argument(format!("part {i} has size 0")));
    }
    let layout = PartiteLayout::consecutive(sizes);
    let edges = layout
        .parts()
        .iter()
        .map(|p| p.iter().copied())
        .multi_cartesian_product();
    Hypergraph::new(sizes.len(), layout.num_vertices(), edges.collect())?.with_layout(layout)
}

/// Vertex id of the middle vertex `(i, j)` in part `m ≥ 2` of the hedgehog.
fn hedgehog_vertex(d: usize, m: usize, i: usize, j: usize) -> Vertex {
    2 * d + (m - 2) * d * d + i * d + j
}

/// The bipartite hedgehog `H_d^{(k)}`: `K_{d,d}` on parts 0 and 1, each edge
/// `(i, j)` extended by a private vertex `(i, j)` in each of parts `2..k`.
pub fn bipartite_hedgehog(k: usize, d: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::Argument(format!("hedgehog needs k >= 2, got {k}")));
    }
    if d == 0 {
        return Err(Error::Argument("hedgehog needs d >= 1".into()));
    }
    let mut sizes = vec![d, d];
    sizes.extend(std::iter::repeat_n(d * d, k - 2));
    let layout = PartiteLayout::consecutive(&sizes);
    let edges = (0..d)
        .cartesian_product(0..d)
        .map(|(i, j)| {
            let mut e = vec![i, d + j];
            e.extend((2..k).map(|m| hedgehog_vertex(d, m, i, j)));
            e
        })
        .collect();
    Hypergraph::new(k, layout.num_vertices(), edges)?.with_layout(layout)
}

/// `G^k(n; p)`: every `k`-subset of `[n]` independently with probability `p`.
pub fn erdos_renyi(k: usize, n: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    if k == 0 {
        return Err(Error::Argument("uniformity must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let edges = (0..n).combinations(k).filter(|_| rng.gen_bool(p)).collect();
    Hypergraph::new(k, n, edges)
}

/// A `d × d` Latin square with symbols in `[0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinSquare {
    d: usize,
    cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self> {
        let d = cells.len();
        let is_perm = |line: Vec<usize>| {
            let mut seen = vec![false; d];
            line.into_iter()
                .all(|s| s < d && !std::mem::replace(&mut seen[s], true))
        };
        for (r, row) in cells.iter().enumerate() {
            if row.len() != d || !is_perm(row.clone()) {
                return Err(Error::Argument(format!(
                    "row {r} is not a permutation of [0, {d})"
                )));
            }
        }
        for c in 0..d {
            if !is_perm(cells.iter().map(|row| row[c]).collect()) {
                return Err(Error::Argument(format!(
                    "column {c} is not a permutation of [0, {d})"
                )));
            }
        }
        Ok(Self { d, cells })
    }

    /// `L(i, j) = (i + j) mod d`.
    pub fn cyclic(d: usize) -> Self {
        Self {
            d,
            cells: (0..d)
                .map(|i| (0..d).map(|j| (i + j) % d).collect())
                .collect(),
        }
    }

    /// Rows drawn as uniform permutations, each redrawn until it clashes
    /// with no earlier row in any column. Restarts from scratch when a row
    /// keeps failing.
    pub fn random(d: usize, seed: u64) -> Self {
        const ROW_ATTEMPTS: usize = 10_000;
        let mut rng = rng_from_seed(seed);
        'restart: loop {
            let mut cells: Vec<Vec<usize>> = Vec::with_capacity(d);
            while cells.len() < d {
                let mut row: Vec<usize> = (0..d).collect();
                let mut placed = false;
                for _ in 0..ROW_ATTEMPTS {
                    row.shuffle(&mut rng);
                    if cells
                        .iter()
                        .all(|prev| prev.iter().zip(&row).all(|(a, b)| a != b))
                    {
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    continue 'restart;
                }
                cells.push(row);
            }
            return Self { d, cells };
        }
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }
}

/// `H_L` on rows `[0, d)`, columns `[d, 2d)`, symbols `[2d, 3d)`.
pub fn latin_square_hypergraph(l: &LatinSquare) -> Hypergraph {
    let d = l.order();
    let edges = (0..d)
        .cartesian_product(0..d)
        .map(|(i, j)| vec![i, d + j, 2 * d + l.cell(i, j)])
        .collect();
    Hypergraph::new(3, 3 * d, edges)
        .and_then(|h| h.with_layout(PartiteLayout::consecutive(&[d, d, d])))
        .expect("a Latin square gives a proper 3-partite hypergraph")
}

/// `Ĥ`: one anchor vertex `n + i` per part `i`, and for every edge and every
/// set of parts, the edge with those coordinates replaced by anchors.
pub fn augment_with_anchors(h: &Hypergraph) -> Result<Hypergraph> {
    let layout = h.require_transversal_layout()?;
    let k = h.k();
    let n = h.n();
    let edges = h.edges().iter().flat_map(|e| {
        (0..1usize << k).map(move |mask| {
            e.iter()
                .map(|&v| {
                    let part = layout.part_of(v);
                    if mask >> part & 1 == 1 {
                        n + part
                    } else {
                        v
                    }
                })
                .collect::<Vec<_>>()
        })
    });
    let out = Hypergraph::from_edges_dedup(k, n + k, edges.collect::<Vec<_>>())?;
    let mut parts = layout.parts().to_vec();
    for (i, part) in parts.iter_mut().enumerate() {
        part.push(n + i);
    }
    out.with_layout(PartiteLayout::new(n + k, parts)?)
}

/// Makes `h` `ell`-uniform and `ell`-partite along `coloring`. Each edge gets
/// fresh auxiliary vertices, one per missing color, numbered from `n` in
/// edge order and, within an edge, by ascending missing color; the
/// auxiliary vertex joins the part of its missing color.
pub fn lift_to_uniformity(h: &Hypergraph, ell: usize, coloring: &[usize]) -> Result<Hypergraph> {
    let k = h.k();
    if ell < k {
        return Err(Error::Argument(format!(
            "target uniformity {ell} below k = {k}"
        )));
    }
    if coloring.len() != h.n() {
        return Err(Error::Coloring(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            h.n()
        )));
    }
    if let Some(v) = coloring.iter().position(|&c| c >= ell) {
        return Err(Error::Coloring(format!(
            "vertex {v} has color {} >= {ell}",
            coloring[v]
        )));
    }
    let mut part_of = coloring.to_vec();
    let mut edges = Vec::with_capacity(h.num_edges());
    for (ei, e) in h.edges().iter().enumerate() {
        let mut used = vec![false; ell];
        for &v in e {
            if std::mem::replace(&mut used[coloring[v]], true) {
                return Err(Error::Coloring(format!(
                    "edge {ei} {e:?} repeats color {}",
                    coloring[v]
                )));
            }
        }
        let mut lifted = e.clone();
        for c in (0..ell).filter(|&c| !used[c]) {
            lifted.push(part_of.len());
            part_of.push(c);
        }
        edges.push(lifted);
    }
    Hypergraph::new(ell, part_of.len(), edges)?
        .with_layout(PartiteLayout::from_assignment(&part_of, ell)?)
}

/// A uniform random split of `g` into `parts` blocks of `part_size` vertices
/// each (vertices beyond `parts · part_size` are dropped), keeping the edges
/// that meet every block exactly once. The result is relabelled with block
/// `i` occupying `[i·part_size, (i+1)·part_size)`; the second component
/// maps each new id back to its id in `g`.
pub fn random_partite_restriction(
    g: &Hypergraph,
    parts: usize,
    part_size: usize,
    seed: u64,
) -> Result<(Hypergraph, Vec<Vertex>)> {
    if parts != g.k() {
        return Err(Error::Argument(format!(
            "{parts} parts for a {}-uniform hypergraph",
            g.k()
        )));
    }
    if parts * part_size > g.n() {
        return Err(Error::Argument(format!(
            "{parts} parts of size {part_size} need more than {} vertices",
            g.n()
        )));
    }
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.shuffle(&mut rng_from_seed(seed));
    order.truncate(parts * part_size);
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter_map(|e| {
            let mapped: Vec<Vertex> = e.iter().map(|&v| new_id[v]).collect();
            if mapped.contains(&usize::MAX) {
                return None;
            }
            mapped
                .iter()
                .map(|&x| x / part_size)
                .all_unique()
                .then_some(mapped)
        })
        .collect();
    let layout = PartiteLayout::consecutive(&vec![part_size; parts]);
    let out = Hypergraph::new(g.k(), parts * part_size, edges)?.with_layout(layout)?;
    Ok((out, order))
}

/// Uniform equitable `k`-partition of the whole vertex set, keeping only
/// transversal edges. Vertex ids are preserved.
pub fn random_equipartition(
    g: &Hypergraph,
    k: usize,
    seed: u64,
) -> Result<(Hypergraph, PartiteLayout)> {
    if k == 0 || !g.n().is_multiple_of(k) {
        return Err(Error::Argument(format!(
            "{k} does not divide v(G) = {}",
            g.n()
        )));
    }
    if k != g.k() {
        return Err(Error::Argument(format!(
            "{k} parts for a {}-uniform hypergraph",
            g.k()
        )));
    }
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.shuffle(&mut rng_from_seed(seed));
    let size = g.n() / k;
    let layout = PartiteLayout::new(
        g.n(),
        order.chunks(size.max(1)).map(<[_]>::to_vec).collect(),
    )?;
    let kept = g.filter_edges(|e| e.iter().map(|&v| layout.part_of(v)).all_unique());
    Ok((kept.with_layout(layout.clone())?, layout))
}
