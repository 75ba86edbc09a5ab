use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartiteLayout, Vertex};
use crate::skeleton::skeleton;

/// Host and pattern laid out on `K` matching parts, with a forward tuple
/// `f_v` for every pattern vertex outside the last part and a threshold
/// `θ_i` for every part but the last.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingSetup {
    host: Hypergraph,
    pattern: Hypergraph,
    fwd: Vec<Vec<Vertex>>,
    thetas: Vec<BigRational>,
    d: usize,
}

fn setup_error(msg: impl Into<String>) -> Error {
    Error::Setup(msg.into())
}

fn reorder(layout: &PartiteLayout, order: &[usize]) -> Result<PartiteLayout> {
    PartiteLayout::new(
        layout.num_vertices(),
        order.iter().map(|&p| layout.part(p).to_vec()).collect(),
    )
}

impl EmbeddingSetup {
    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn pattern(&self) -> &Hypergraph {
        &self.pattern
    }

    /// Number of parts `K`.
    pub fn num_parts(&self) -> usize {
        self.host
            .layout()
            .expect("setup host has a layout")
            .num_parts()
    }

    pub fn host_layout(&self) -> &PartiteLayout {
        self.host.layout().expect("setup host has a layout")
    }

    pub fn pattern_layout(&self) -> &PartiteLayout {
        self.pattern.layout().expect("setup pattern has a layout")
    }

    /// `f_v`; empty for vertices of the last part.
    pub fn forward_tuple(&self, v: Vertex) -> &[Vertex] {
        &self.fwd[v]
    }

    pub fn forward_tuples(&self) -> &[Vec<Vertex>] {
        &self.fwd
    }

    /// `θ_i` for `i < K - 1` (zero-based).
    pub fn theta(&self, i: usize) -> &BigRational {
        &self.thetas[i]
    }

    pub fn thetas(&self) -> &[BigRational] {
        &self.thetas
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Pattern neighbours of `v` in the 1-skeleton lying in later parts.
pub fn forward_neighbors(skel: &Hypergraph, layout: &PartiteLayout, v: Vertex) -> Vec<Vertex> {
    let pv = layout.part_of(v);
    skel.incident(v)
        .iter()
        .flat_map(|&ei| skel.edges()[ei].iter().copied())
        .filter(|&u| u != v && layout.part_of(u) > pv)
        .sorted_unstable()
        .dedup()
        .collect()
}

/// [`build_setup_with_classes`] where every part is its own class.
pub fn build_setup(
    g: &Hypergraph,
    h: &Hypergraph,
    parts_order: &[usize],
    thetas: &[BigRational],
    d: usize,
) -> Result<EmbeddingSetup> {
    let classes: Vec<usize> = (0..parts_order.len()).collect();
    build_setup_with_classes(g, h, parts_order, thetas, d, &classes)
}

/// Reorders both layouts by `parts_order` (setup part `i` is layout part
/// `parts_order[i]`) and builds `f_v` as `N^+(v)` ascending, padded with the
/// smallest later-part vertices whose class differs from that of `v`'s part.
/// Padding prefers vertices outside `N^+(v)` and repeats once those run out.
pub fn build_setup_with_classes(
    g: &Hypergraph,
    h: &Hypergraph,
    parts_order: &[usize],
    thetas: &[BigRational],
    d: usize,
    classes: &[usize],
) -> Result<EmbeddingSetup> {
    let k = g.k();
    if h.k() != k {
        return Err(Error::Uniformity {
            pattern: h.k(),
            host: k,
        });
    }
    let gl = g
        .layout()
        .ok_or_else(|| setup_error("host has no layout"))?;
    let hl = h
        .layout()
        .ok_or_else(|| setup_error("pattern has no layout"))?;
    let kk = parts_order.len();
    if gl.num_parts() != kk || hl.num_parts() != kk {
        return Err(setup_error(format!(
            "part order lists {kk} parts, host has {}, pattern has {}",
            gl.num_parts(),
            hl.num_parts()
        )));
    }
    if !parts_order.iter().copied().sorted_unstable().eq(0..kk) {
        return Err(setup_error("part order is not a permutation"));
    }
    if k < 2 || kk < k {
        return Err(setup_error(format!(
            "need K >= k >= 2, got K = {kk}, k = {k}"
        )));
    }
    if d == 0 {
        return Err(setup_error("tuple length d must be positive"));
    }
    if classes.len() != kk {
        return Err(setup_error(format!(
            "{} classes for {kk} parts",
            classes.len()
        )));
    }
    if thetas.len() != kk - 1 {
        return Err(setup_error(format!(
            "{} thresholds for {} non-final parts",
            thetas.len(),
            kk - 1
        )));
    }
    if let Some(i) = thetas.iter().position(|t| !t.is_positive()) {
        return Err(setup_error(format!("theta_{i} is not positive")));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.is_isolated(v)) {
        return Err(setup_error(format!("host vertex {v} is isolated")));
    }
    let gl = reorder(gl, parts_order)?;
    let hl = reorder(hl, parts_order)?;
    let host = g.clone().with_layout(gl.clone())?;
    let pattern = h.clone().with_layout(hl.clone())?;
    if let Some(e) = pattern
        .edges()
        .iter()
        .find(|e| e.iter().map(|&x| hl.part_of(x)).unique().count() != k)
    {
        return Err(setup_error(format!(
            "pattern edge {e:?} does not meet {k} distinct parts"
        )));
    }
    if gl.part(kk - 1).len() < hl.part(kk - 1).len() {
        return Err(setup_error(format!(
            "last host part has {} vertices, fewer than the {} pattern vertices it must hold",
            gl.part(kk - 1).len(),
            hl.part(kk - 1).len()
        )));
    }
    if let Some(i) = (0..kk).find(|&i| gl.part(i).is_empty() && !hl.part(i).is_empty()) {
        return Err(setup_error(format!(
            "host part {i} is empty but its pattern part is not"
        )));
    }
    let skel = skeleton(&pattern, 1)?;
    let mut fwd = vec![Vec::new(); h.n()];
    for v in 0..h.n() {
        let pv = hl.part_of(v);
        if pv == kk - 1 {
            continue;
        }
        let mut f = forward_neighbors(&skel, &hl, v);
        if f.len() > d {
            return Err(setup_error(format!(
                "vertex {v} has {} forward neighbours, more than d = {d}",
                f.len()
            )));
        }
        if f.len() < d {
            let eligible: Vec<Vertex> = (0..h.n())
                .filter(|&u| hl.part_of(u) > pv && classes[hl.part_of(u)] != classes[pv])
                .collect();
            if eligible.is_empty() {
                return Err(setup_error(format!(
                    "no later vertex of a different class can pad f_{v}"
                )));
            }
            let fresh: Vec<Vertex> = eligible
                .iter()
                .copied()
                .filter(|u| !f.contains(u))
                .collect();
            let need = d - f.len();
            f.extend(fresh.iter().chain(eligible.iter().cycle()).take(need));
        }
        fwd[v] = f;
    }
    Ok(EmbeddingSetup {
        host,
        pattern,
        fwd,
        thetas: thetas.to_vec(),
        d,
    })
}
