//! Dependent random choice: vertex-extension certificates, the single-part
//! round, the staged pipeline, and the simultaneous product pruning.
//!
//! All hosts here are `k`-uniform with a transversal `k`-part layout, so an
//! edge `e` has a well-defined coordinate `e_t` in every part `t`.

use std::collections::HashMap;

use itertools::Itertools;
use rand::Rng as _;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::defect::{omega_theta, Defect};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartiteLayout, Vertex};
use crate::rng::{rng_from_seed, stage_rng, Rng};
use crate::skeleton::set_neighborhood;

/// Default cap on the number of vertex sets or tuples an exhaustive check
/// may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// Outcome of an `(a, d)`-vertex-extension check against part `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionWitness {
    pub t: usize,
    pub a: usize,
    pub d: usize,
    /// Every `S ⊆ V_{-t}` with `|S| ≤ d` whose induced `(k-1)`-edges have
    /// fewer than `a` mutual extensions, with that count.
    pub violations: Vec<(Vec<Vertex>, usize)>,
}

impl ExtensionWitness {
    pub fn is_extending(&self) -> bool {
        self.violations.is_empty()
    }
}

fn edge_coordinate(layout: &PartiteLayout, e: &[Vertex], t: usize) -> usize {
    e.iter()
        .position(|&v| layout.part_of(v) == t)
        .expect("transversal edge meets every part")
}

/// `e` with its part-`t` vertex replaced by `x`, sorted.
fn substitute(layout: &PartiteLayout, e: &[Vertex], t: usize, x: Vertex) -> Vec<Vertex> {
    let mut f = e.to_vec();
    f[edge_coordinate(layout, e, t)] = x;
    f.sort_unstable();
    f
}

/// Checks every `S ⊆ V_{-t}` of at most `d` vertices: the `(k-1)`-sets
/// inside `S` that lie in edges must have at least `a` common extensions
/// into `V_t`. A set spanning no such `(k-1)`-set is extended by all of
/// `V_t`.
pub fn is_vertex_extending(
    g: &Hypergraph,
    t: usize,
    a: usize,
    d: usize,
    cap: u64,
) -> Result<ExtensionWitness> {
    let layout = g.require_transversal_layout()?;
    if t >= g.k() {
        return Err(Error::Index {
            index: t,
            lo: 0,
            hi: g.k(),
        });
    }
    let outside = layout.outside(t);
    let total: u128 = (0..=d as u64)
        .map(|j| binomial(outside.len() as u64, j))
        .sum();
    if total > u128::from(cap) {
        return Err(Error::BudgetExceeded {
            context: format!("{total} vertex sets for the extension check"),
            limit: cap,
        });
    }
    // extensions of each (k-1)-edge avoiding part t
    let mut ext: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
    for e in g.edges() {
        let c = edge_coordinate(layout, e, t);
        let mut rest = e.clone();
        let x = rest.remove(c);
        ext.entry(rest).or_default().push(x);
    }
    for list in ext.values_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let full = layout.part(t).to_vec();
    let k = g.k();
    let mut violations = Vec::new();
    for size in 0..=d.min(outside.len()) {
        for s in outside.iter().copied().combinations(size) {
            let mut common: Option<Vec<Vertex>> = None;
            for sub in s.iter().copied().combinations(k - 1) {
                if let Some(list) = ext.get(&sub) {
                    common = Some(match common {
                        None => list.clone(),
                        Some(c) => c
                            .into_iter()
                            .filter(|v| list.binary_search(v).is_ok())
                            .collect(),
                    });
                }
            }
            let count = common.as_ref().unwrap_or(&full).len();
            if count < a {
                violations.push((s, count));
            }
        }
    }
    Ok(ExtensionWitness {
        t,
        a,
        d,
        violations,
    })
}

/// Keeps `e` iff `(e ∖ {e_t}) ∪ {x}` is an edge for every `x ∈ xs`.
pub fn drc_filter(g: &Hypergraph, t: usize, xs: &[Vertex]) -> Result<Hypergraph> {
    let layout = g.require_transversal_layout()?;
    if t >= g.k() {
        return Err(Error::Index {
            index: t,
            lo: 0,
            hi: g.k(),
        });
    }
    let xs: Vec<Vertex> = xs.iter().copied().sorted_unstable().dedup().collect();
    Ok(g.filter_edges(|e| {
        xs.iter()
            .all(|&x| g.contains_edge(&substitute(layout, e, t, x)))
    }))
}

fn sample_with_replacement(rng: &mut Rng, pool: &[Vertex], u: usize) -> Vec<Vertex> {
    (0..u).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

/// One round of dependent random choice against part `t`: `u` vertices of
/// `V_t` drawn with replacement, then [`drc_filter`].
pub fn drc_round(
    g: &Hypergraph,
    t: usize,
    u: usize,
    seed: u64,
) -> Result<(Hypergraph, Vec<Vertex>)> {
    let layout = g.require_transversal_layout()?;
    if t >= g.k() {
        return Err(Error::Index {
            index: t,
            lo: 0,
            hi: g.k(),
        });
    }
    if layout.part(t).is_empty() {
        return Err(Error::Argument(format!("part {t} is empty")));
    }
    let xs = sample_with_replacement(&mut rng_from_seed(seed), layout.part(t), u);
    let out = drc_filter(g, t, &xs)?;
    debug_assert!(out.edges().iter().all(|e| xs
        .iter()
        .all(|&x| g.contains_edge(&substitute(layout, e, t, x)))));
    Ok((out, xs))
}

/// Thresholds of the staged pipeline. `None` fields take their defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineParams {
    /// Extension set-size bound `d` required of the survivor.
    pub d: usize,
    /// Density exponent: the host is expected to have `n^{k-ε_0}` edges.
    /// Defaults to `3^{-k(k+3)/2} d^{-k+1}`.
    pub epsilon0: Option<f64>,
    /// Samples per stage are `λ d_t` with `d_t = 3^{k-t+1} d`.
    pub lambda: usize,
    /// The final stage samples `final_factor · d` vertices.
    pub final_factor: usize,
    /// Extension threshold; defaults to `⌈n^{1/3}⌉`.
    pub h: Option<usize>,
    pub retries: usize,
    pub cap: u64,
}

impl PipelineParams {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            epsilon0: None,
            lambda: 2,
            final_factor: 8,
            h: None,
            retries: 16,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    pub fn default_epsilon0(k: usize, d: usize) -> f64 {
        let k = k as f64;
        3f64.powf(-k * (k + 3.0) / 2.0) * (d as f64).powf(-k + 1.0)
    }
}

/// One pruning stage: the part sampled, the tuple drawn, and edge counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub part: usize,
    pub tuple: Vec<Vertex>,
    pub edges_before: usize,
    pub edges_after: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruneTrace {
    pub attempt: usize,
    pub stages: Vec<StageRecord>,
    #[serde(skip)]
    pub survivor: Hypergraph,
    pub survivor_edges: usize,
    /// Whether `e(G) ≥ n^{k-ε_0}` held for the input.
    pub density_hypothesis: bool,
    pub epsilon0: f64,
    pub h: usize,
    /// Parts to which the survivor failed to be `(h, d)`-vertex-extending.
    pub non_extending_parts: Vec<usize>,
}

impl PruneTrace {
    pub fn tuples(&self) -> Vec<&[Vertex]> {
        self.stages.iter().map(|s| s.tuple.as_slice()).collect()
    }

    /// `X_1 × ⋯ × X_k ⊆ E(survivor)`.
    pub fn product_in_survivor(&self) -> bool {
        let sets: Vec<Vec<Vertex>> = self
            .stages
            .iter()
            .map(|s| s.tuple.iter().copied().sorted_unstable().dedup().collect())
            .collect();
        sets.iter()
            .map(|s| s.iter().copied())
            .multi_cartesian_product()
            .all(|e| self.survivor.contains_unsorted(&e))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruneFailure {
    pub reason: String,
    pub best: Option<PruneTrace>,
    pub attempts: usize,
}

/// `⌈n^{1/3}⌉` in exact integer arithmetic.
pub fn ceil_cube_root(n: usize) -> usize {
    let mut a = (n as f64).cbrt().floor() as usize;
    while a.pow(3) < n {
        a += 1;
    }
    while a > 0 && (a - 1).pow(3) >= n {
        a -= 1;
    }
    a
}

/// The staged pruning: for `t = 1..k-1` a round against part `t` with
/// `λ · 3^{k-t+1} d` samples, then `8d` samples from the non-isolated
/// vertices `B_k` of the last part. An attempt succeeds when the survivor
/// is nonempty and `(h, d)`-vertex-extending to every part; attempts are
/// retried with fresh derived seeds up to `params.retries` times.
pub fn prune_pipeline(
    g: &Hypergraph,
    params: &PipelineParams,
    seed: u64,
) -> Result<std::result::Result<PruneTrace, PruneFailure>> {
    let layout = g.require_transversal_layout()?;
    if !layout.is_balanced() {
        return Err(Error::Layout("pipeline needs equal part sizes".into()));
    }
    let k = g.k();
    let n = layout.part(0).len();
    let epsilon0 = params
        .epsilon0
        .unwrap_or_else(|| PipelineParams::default_epsilon0(k, params.d));
    let density_hypothesis = g.num_edges() as f64 >= (n as f64).powf(k as f64 - epsilon0);
    let h = params.h.unwrap_or_else(|| ceil_cube_root(n));
    if g.is_empty() {
        return Ok(Err(PruneFailure {
            reason: "host has no edges".into(),
            best: None,
            attempts: 0,
        }));
    }
    let mut best: Option<PruneTrace> = None;
    for attempt in 0..params.retries.max(1) {
        let mut current = g.clone();
        let mut stages = Vec::with_capacity(k);
        for t in 0..k - 1 {
            let d_t = 3usize.pow((k - t) as u32) * params.d;
            let mut rng = stage_rng(seed, &format!("pipeline-stage-{t}"), attempt as u64);
            let xs = sample_with_replacement(&mut rng, layout.part(t), params.lambda * d_t);
            let next = drc_filter(&current, t, &xs)?;
            stages.push(StageRecord {
                part: t,
                tuple: xs,
                edges_before: current.num_edges(),
                edges_after: next.num_edges(),
            });
            current = next;
        }
        let last = k - 1;
        let b_k: Vec<Vertex> = layout
            .part(last)
            .iter()
            .copied()
            .filter(|&v| !current.is_isolated(v))
            .collect();
        let mut non_extending_parts = Vec::new();
        if !b_k.is_empty() {
            let mut rng = stage_rng(seed, "pipeline-final", attempt as u64);
            let xs = sample_with_replacement(&mut rng, &b_k, params.final_factor * params.d);
            let next = drc_filter(&current, last, &xs)?;
            stages.push(StageRecord {
                part: last,
                tuple: xs,
                edges_before: current.num_edges(),
                edges_after: next.num_edges(),
            });
            current = next;
            for r in 0..k {
                if !is_vertex_extending(&current, r, h, params.d, params.cap)?.is_extending() {
                    non_extending_parts.push(r);
                }
            }
        }
        let trace = PruneTrace {
            attempt,
            stages,
            survivor_edges: current.num_edges(),
            survivor: current,
            density_hypothesis,
            epsilon0,
            h,
            non_extending_parts,
        };
        if trace.stages.len() == k
            && trace.survivor_edges > 0
            && trace.non_extending_parts.is_empty()
        {
            return Ok(Ok(trace));
        }
        let better = match &best {
            None => true,
            Some(b) => {
                (
                    trace.survivor_edges > 0,
                    trace.stages.len(),
                    trace.survivor_edges,
                ) > (b.survivor_edges > 0, b.stages.len(), b.survivor_edges)
            }
        };
        if better {
            best = Some(trace);
        }
    }
    Ok(Err(PruneFailure {
        reason: format!(
            "no nonempty ({h}, {})-vertex-extending survivor in {} attempts",
            params.d,
            params.retries.max(1)
        ),
        best,
        attempts: params.retries.max(1),
    }))
}

/// Result of a simultaneous pruning. `pruned` has isolated vertices
/// removed and is relabelled; `original_ids[v]` is the input id of `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimultaneousPrune {
    pub pruned: Hypergraph,
    pub original_ids: Vec<Vertex>,
    /// The sampled `t`-tuple of each part, in input ids.
    pub tuples: Vec<Vec<Vertex>>,
    /// Edge set before isolated vertices are dropped, in input ids.
    pub kept: Hypergraph,
}

/// Keeps `e` iff every edge of `({e_1} ∪ X_1) × ⋯ × ({e_k} ∪ X_k)` is in `g`.
pub fn product_filter(g: &Hypergraph, tuples: &[Vec<Vertex>]) -> Result<Hypergraph> {
    let layout = g.require_transversal_layout()?;
    if tuples.len() != g.k() {
        return Err(Error::Argument(format!(
            "{} tuples for {} parts",
            tuples.len(),
            g.k()
        )));
    }
    let sets: Vec<Vec<Vertex>> = tuples
        .iter()
        .map(|x| x.iter().copied().sorted_unstable().dedup().collect())
        .collect();
    Ok(g.filter_edges(|e| {
        let mut by_part = vec![0; e.len()];
        for &v in e {
            by_part[layout.part_of(v)] = v;
        }
        by_part
            .iter()
            .zip(&sets)
            .map(|(&ei, xs)| {
                std::iter::once(ei).chain(xs.iter().copied().filter(move |&x| x != ei))
            })
            .multi_cartesian_product()
            .all(|f| g.contains_unsorted(&f))
    }))
}

/// Samples a uniform `t`-tuple from every part at once, applies
/// [`product_filter`], and drops isolated vertices.
pub fn simultaneous_prune(g: &Hypergraph, t: usize, seed: u64) -> Result<SimultaneousPrune> {
    let layout = g.require_transversal_layout()?;
    if let Some(i) = (0..g.k()).find(|&i| layout.part(i).is_empty()) {
        return Err(Error::Argument(format!("part {i} is empty")));
    }
    let mut rng = rng_from_seed(seed);
    let tuples: Vec<Vec<Vertex>> = (0..g.k())
        .map(|i| sample_with_replacement(&mut rng, layout.part(i), t))
        .collect();
    let kept = product_filter(g, &tuples)?;
    let (pruned, original_ids) = kept.without_isolated();
    Ok(SimultaneousPrune {
        pruned,
        original_ids,
        tuples,
        kept,
    })
}

/// `Σ_{Q ∈ (V_{-i})^d} ω_θ(Q, V_i; G)^t` over ordered `d`-tuples with
/// repetition, each read as its set of coordinates.
pub fn defect_moment_sum(
    g: &Hypergraph,
    i: usize,
    d: usize,
    theta: &num_rational::BigRational,
    t: u32,
    cap: u64,
) -> Result<Defect> {
    let layout = g.require_layout()?;
    if i >= layout.num_parts() {
        return Err(Error::Index {
            index: i,
            lo: 0,
            hi: layout.num_parts(),
        });
    }
    let outside = layout.outside(i);
    let count = (outside.len() as u128)
        .checked_pow(d as u32)
        .unwrap_or(u128::MAX);
    if count > u128::from(cap) {
        return Err(Error::BudgetExceeded {
            context: format!("{count} tuples for the defect moment"),
            limit: cap,
        });
    }
    if d == 0 {
        return Ok(omega_theta(part_neighborhood(g, layout, &[], i) as u64, theta)?.pow(t));
    }
    let mut memo: HashMap<Vec<Vertex>, Defect> = HashMap::new();
    let mut total = Defect::zero();
    for tuple in std::iter::repeat_n(outside.iter().copied(), d).multi_cartesian_product() {
        let set: Vec<Vertex> = tuple.into_iter().sorted_unstable().dedup().collect();
        let value = match memo.get(&set) {
            Some(v) => v.clone(),
            None => {
                let v = omega_theta(part_neighborhood(g, layout, &set, i) as u64, theta)?.pow(t);
                memo.insert(set, v.clone());
                v
            }
        };
        total = total + value;
    }
    Ok(total)
}

fn part_neighborhood(g: &Hypergraph, layout: &PartiteLayout, q: &[Vertex], i: usize) -> usize {
    set_neighborhood(g, q)
        .into_iter()
        .filter(|&v| layout.part_of(v) == i)
        .count()
}

/// For each edge `e` of `from` and sample set, whether the substituted
/// edges of the single-part rule stay in `g`; used to re-verify survivors.
pub fn survivors_obey_rule(g: &Hypergraph, survivor: &Hypergraph, t: usize, xs: &[Vertex]) -> bool {
    let Some(layout) = g.layout() else {
        return false;
    };
    survivor.edges().iter().all(|e| {
        g.contains_edge(e)
            && xs
                .iter()
                .all(|&x| g.contains_edge(&substitute(layout, e, t, x)))
    }) && g.edges().iter().all(|e| {
        survivor.contains_edge(e)
            || xs
                .iter()
                .any(|&x| !g.contains_edge(&substitute(layout, e, t, x)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defect::ratio;
    use crate::generators::complete_kpartite;

    fn single_triple() -> Hypergraph {
        complete_kpartite(&[1, 1, 1]).unwrap()
    }

    #[test]
    fn extension_on_complete_host() {
        let g = complete_kpartite(&[3, 3, 3]).unwrap();
        for t in 0..3 {
            assert!(is_vertex_extending(&g, t, 3, 2, 1 << 20)
                .unwrap()
                .is_extending());
            assert!(!is_vertex_extending(&g, t, 4, 2, 1 << 20)
                .unwrap()
                .is_extending());
        }
    }

    #[test]
    fn extension_violation_on_single_edge() {
        let g = complete_kpartite(&[1, 1, 1]).unwrap();
        let w = is_vertex_extending(&g, 2, 2, 2, 1 << 20).unwrap();
        assert!(w.violations.contains(&(vec![0, 1], 1)));
        // sets spanning no 2-edge are extended by the whole part, which has one vertex
        assert!(w.violations.contains(&(vec![0], 1)));
        let single = single_triple();
        assert!(matches!(
            is_vertex_extending(&single, 2, 1, 2, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn round_on_complete_host_keeps_everything() {
        let g = complete_kpartite(&[3, 3, 3]).unwrap();
        for seed in 0..5 {
            let (out, xs) = drc_round(&g, 1, 4, seed).unwrap();
            assert_eq!(out, g);
            assert_eq!(xs.len(), 4);
            assert!(survivors_obey_rule(&g, &out, 1, &xs));
        }
    }

    #[test]
    fn filter_drops_edges_with_missing_substitutes() {
        let g = complete_kpartite(&[2, 2])
            .unwrap()
            .filter_edges(|e| e != [1, 3]);
        // substituting 1 for the part-0 vertex: {0,3} needs {1,3}
        let out = drc_filter(&g, 0, &[1]).unwrap();
        assert_eq!(out.edges(), &[vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn pipeline_on_complete_host() {
        let g = complete_kpartite(&[4, 4, 4]).unwrap();
        let trace = prune_pipeline(&g, &PipelineParams::new(2), 3)
            .unwrap()
            .unwrap();
        assert_eq!(trace.survivor, g);
        assert!(trace.product_in_survivor());
        assert_eq!(trace.attempt, 0);
    }

    #[test]
    fn pipeline_on_empty_host_fails() {
        let g = Hypergraph::empty(3, 9)
            .with_layout(PartiteLayout::consecutive(&[3, 3, 3]))
            .unwrap();
        assert!(prune_pipeline(&g, &PipelineParams::new(2), 0)
            .unwrap()
            .is_err());
    }

    #[test]
    fn epsilon0_default() {
        let e = PipelineParams::default_epsilon0(3, 2);
        assert!((e - 3f64.powi(-9) / 4.0).abs() < 1e-15);
        assert_eq!(
            (
                ceil_cube_root(8),
                ceil_cube_root(9),
                ceil_cube_root(1),
                ceil_cube_root(12)
            ),
            (2, 3, 1, 3)
        );
    }

    #[test]
    fn simultaneous_prune_on_complete_host() {
        let g = complete_kpartite(&[3, 3]).unwrap();
        let r = simultaneous_prune(&g, 2, 9).unwrap();
        assert_eq!(r.pruned, g);
        assert_eq!(r.original_ids, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn moment_sums() {
        let g = complete_kpartite(&[2, 2]).unwrap();
        assert!(defect_moment_sum(&g, 0, 1, &ratio(2, 1), 2, 100)
            .unwrap()
            .is_zero());
        let sparse = g.filter_edges(|e| e != [1, 3]);
        assert_eq!(
            defect_moment_sum(&sparse, 0, 1, &ratio(2, 1), 2, 100).unwrap(),
            Defect::from_integer(4)
        );
        // ordered pairs over {2, 3}: {2} once, {3} once, {2, 3} twice
        assert_eq!(
            defect_moment_sum(&sparse, 0, 2, &ratio(2, 1), 1, 100).unwrap(),
            Defect::from_integer(6)
        );
        // an isolated vertex spans no partial edge, so it is extended by everything
        let isolated = g.filter_edges(|e| e[1] != 3);
        assert!(defect_moment_sum(&isolated, 0, 1, &ratio(2, 1), 2, 100)
            .unwrap()
            .is_zero());
        assert!(defect_moment_sum(&g, 0, 3, &ratio(2, 1), 2, 7).is_err());
    }
}
