//! Deletion-method lower-bound constructions for Turán numbers, and the
//! clique lifting from an `r`-uniform host to a `k`-uniform one.

use itertools::Itertools;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::degeneracy::{degeneracy, min_degree_core};
use crate::error::{Error, Result};
use crate::generators::{complete_kpartite, erdos_renyi};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::oracle::find_embedding;
use crate::rng::derive_seed;
use crate::skeleton::skeleton;

/// Default ceiling on the number of copy-removal steps in one construction.
pub const DEFAULT_REMOVAL_BUDGET: u64 = 100_000;

/// Hosts above this many vertices skip the final `H`-freeness oracle call.
pub const VERIFY_MAX_N: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HFreeCheck {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// The edge-count guarantee is positive at this `n`.
    Asymptotic,
    /// The guarantee is vacuous at this `n`; only freeness is meaningful.
    Subasymptotic,
}

/// Bookkeeping of one deletion-method run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeletionReport {
    pub n: usize,
    pub p: f64,
    /// Edges of the random host before deletion.
    pub sampled_edges: usize,
    /// Edges deleted, one per copy found.
    pub removed: usize,
    pub final_edges: usize,
    /// `K_k^{(r)}` copies before and after deletion; for the complete
    /// family `r = k` and these equal the edge counts.
    pub clique_count_before: u64,
    pub clique_count_after: u64,
    /// `clique_count_before − C(n, k−r)·removed`, a floor on `clique_count_after`.
    pub z: i128,
    pub hfree_verified: HFreeCheck,
    /// The expectation floor the construction is designed around at this `n`.
    pub guarantee: f64,
    pub regime: Regime,
    pub attempts: usize,
    pub seed: u64,
}

impl DeletionReport {
    pub fn z_bounds_survivors(&self) -> bool {
        self.z <= self.clique_count_after as i128
    }
}

/// Deletes the lexicographically least edge of some copy of `pattern` until
/// none remains. Returns the pruned host and the number of deletions.
fn delete_copies(
    pattern: &Hypergraph,
    host: &Hypergraph,
    budget: u64,
) -> Result<(Hypergraph, usize)> {
    let mut g = host.clone();
    let mut removed = 0usize;
    while let Some(emb) = find_embedding(pattern, &g, false)? {
        if removed as u64 >= budget {
            return Err(Error::BudgetExceeded {
                context: "copy removals".into(),
                limit: budget,
            });
        }
        let victim = pattern
            .edges()
            .iter()
            .map(|e| {
                e.iter()
                    .map(|&x| emb.map[x])
                    .sorted_unstable()
                    .collect::<Vec<_>>()
            })
            .min()
            .expect("pattern has edges");
        g = g.filter_edges(|e| e != victim.as_slice());
        removed += 1;
    }
    Ok((g, removed))
}

fn hfree_check(h: &Hypergraph, g: &Hypergraph) -> Result<HFreeCheck> {
    if g.n() > VERIFY_MAX_N {
        return Ok(HFreeCheck::Skipped);
    }
    Ok(if find_embedding(h, g, false)?.is_none() {
        HFreeCheck::Passed
    } else {
        HFreeCheck::Failed
    })
}

/// Samples `G^k(n; p)` with `p = n^{-k/d^{k-1}}` and deletes one edge per
/// copy of `K^{(k)}_{d,…,d}`.
pub fn deletion_construction_complete(
    k: usize,
    d: usize,
    n: usize,
    seed: u64,
) -> Result<(Hypergraph, DeletionReport)> {
    deletion_construction_complete_with_budget(k, d, n, seed, DEFAULT_REMOVAL_BUDGET)
}

pub fn deletion_construction_complete_with_budget(
    k: usize,
    d: usize,
    n: usize,
    seed: u64,
    budget: u64,
) -> Result<(Hypergraph, DeletionReport)> {
    if k < 2 || d < 2 {
        return Err(Error::Argument(format!(
            "need k, d >= 2, got k = {k}, d = {d}"
        )));
    }
    let h = complete_kpartite(&vec![d; k])?.without_layout();
    let p = if n == 0 {
        0.0
    } else {
        (n as f64).powf(-(k as f64) / (d as f64).powi(k as i32 - 1))
    };
    let g0 = erdos_renyi(k, n, p, derive_seed(seed, "deletion-complete", 0))?;
    let (g, removed) = delete_copies(&h, &g0, budget)?;
    let guarantee = (n as f64).powf(k as f64 - k as f64 / (d as f64).powi(k as i32 - 1))
        / (k as f64).powi(k as i32)
        - 1.0;
    let report = DeletionReport {
        n,
        p,
        sampled_edges: g0.num_edges(),
        removed,
        final_edges: g.num_edges(),
        clique_count_before: g0.num_edges() as u64,
        clique_count_after: g.num_edges() as u64,
        z: g0.num_edges() as i128 - removed as i128,
        hfree_verified: hfree_check(&h, &g)?,
        guarantee,
        regime: if guarantee >= 1.0 {
            Regime::Asymptotic
        } else {
            Regime::Subasymptotic
        },
        attempts: 1,
        seed,
    };
    Ok((g, report))
}

/// The minimum-degree-`d` core of the `i`-skeleton, relabelled onto
/// `0..v`, with the original ids; `None` when `d_i(H) < d`.
pub fn min_degree_subhypergraph(
    h: &Hypergraph,
    i: usize,
    d: usize,
) -> Result<Option<(Hypergraph, Vec<Vertex>)>> {
    if i == 0 || i >= h.k() {
        return Err(Error::Index {
            index: i,
            lo: 1,
            hi: h.k(),
        });
    }
    let sk = skeleton(h, i)?;
    let core = min_degree_core(&sk, d);
    if core.is_empty() {
        return Ok(None);
    }
    Ok(Some((sk.induced(&core).without_layout(), core)))
}

/// Knobs for [`deletion_construction_skeletal`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletalParams {
    /// Seeds are retried until `Z > 0`, at most this many times.
    pub retries: usize,
    pub removal_budget: u64,
}

impl Default for SkeletalParams {
    fn default() -> Self {
        Self {
            retries: 8,
            removal_budget: DEFAULT_REMOVAL_BUDGET,
        }
    }
}

/// Output of the skeletal construction, with the `F`-free intermediate.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeletalConstruction {
    pub output: Hypergraph,
    pub intermediate: Hypergraph,
    pub core: Hypergraph,
    pub report: DeletionReport,
    /// Whether the intermediate was confirmed `F`-free by a fresh search.
    pub intermediate_ffree: bool,
}

pub fn deletion_construction_skeletal(
    h: &Hypergraph,
    i: usize,
    d: usize,
    n: usize,
    seed: u64,
) -> Result<SkeletalConstruction> {
    deletion_construction_skeletal_with(h, i, d, n, seed, &SkeletalParams::default())
}

/// Samples `r`-uniform `G_0 ~ G^r(n; n^{-r/d})` with `r = i + 1`, deletes one
/// `r`-edge per copy of the `d`-core `F` of `H^{(i)}`, and returns the
/// `k`-uniform hypergraph of `K_k^{(r)}` copies in the pruned host.
pub fn deletion_construction_skeletal_with(
    h: &Hypergraph,
    i: usize,
    d: usize,
    n: usize,
    seed: u64,
    params: &SkeletalParams,
) -> Result<SkeletalConstruction> {
    let k = h.k();
    let r = i + 1;
    if i == 0 || i >= k {
        return Err(Error::Index {
            index: i,
            lo: 1,
            hi: k,
        });
    }
    let threshold = binomial(k as u64, r as u64);
    if (d as u128) <= threshold {
        return Err(Error::Precondition(format!(
            "d = {d} must exceed C({k}, {r}) = {threshold}"
        )));
    }
    let Some((f, _)) = min_degree_subhypergraph(h, i, d)? else {
        return Err(Error::Precondition(format!("d_{i}(H) is below {d}")));
    };
    let p = if n == 0 {
        0.0
    } else {
        (n as f64).powf(-(r as f64) / d as f64)
    };
    let spill = binomial(n as u64, (k - r) as u64).min(i128::MAX as u128) as i128;
    let guarantee = (n as f64 / k as f64).powi(k as i32)
        * (n as f64).powf(-(r as f64) / d as f64 * threshold as f64)
        - (n as f64).powi((k - r) as i32);
    let mut last = None;
    for attempt in 0..params.retries.max(1) {
        let g0 = erdos_renyi(
            r,
            n,
            p,
            derive_seed(seed, "deletion-skeletal", attempt as u64),
        )?;
        let (g1, removed) = delete_copies(&f, &g0, params.removal_budget)?;
        let before = count_cliques(&g0, k);
        let output = clique_hypergraph(&g1, k)?;
        let z = before as i128 - spill.saturating_mul(removed as i128);
        let report = DeletionReport {
            n,
            p,
            sampled_edges: g0.num_edges(),
            removed,
            final_edges: g1.num_edges(),
            clique_count_before: before,
            clique_count_after: output.num_edges() as u64,
            z,
            hfree_verified: hfree_check(h, &output)?,
            guarantee,
            regime: if guarantee >= 1.0 {
                Regime::Asymptotic
            } else {
                Regime::Subasymptotic
            },
            attempts: attempt + 1,
            seed,
        };
        let intermediate_ffree = find_embedding(&f, &g1, false)?.is_none();
        let done = z > 0;
        last = Some(SkeletalConstruction {
            output,
            intermediate: g1,
            core: f.clone(),
            report,
            intermediate_ffree,
        });
        if done {
            break;
        }
    }
    Ok(last.expect("at least one attempt"))
}

/// Vertex sets of the `k`-cliques of the `r`-uniform `g`: `k`-sets all of
/// whose `r`-subsets are edges. Cliques are grown backwards along a
/// degeneracy order, so each vertex only branches over its earlier
/// neighbours.
pub fn clique_hypergraph(g: &Hypergraph, k: usize) -> Result<Hypergraph> {
    let edges = list_cliques(g, k)?;
    Hypergraph::new(k, g.n(), edges)
}

pub fn count_cliques(g: &Hypergraph, k: usize) -> u64 {
    list_cliques(g, k).map(|c| c.len() as u64).unwrap_or(0)
}

fn list_cliques(g: &Hypergraph, k: usize) -> Result<Vec<Vec<Vertex>>> {
    let r = g.k();
    if k < r {
        return Err(Error::Argument(format!(
            "clique size {k} is below the uniformity {r}"
        )));
    }
    let order = degeneracy(g).order;
    let mut pos = vec![0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    // back[v]: neighbours of v placed before it, latest first.
    let back: Vec<Vec<Vertex>> = (0..g.n())
        .map(|v| {
            g.incident(v)
                .iter()
                .flat_map(|&ei| g.edges()[ei].iter().copied())
                .filter(|&u| pos[u] < pos[v])
                .sorted_unstable_by_key(|&u| std::cmp::Reverse(pos[u]))
                .dedup()
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut clique = Vec::with_capacity(k);
    for &v in &order {
        if r == 1 && !g.contains_edge(&[v]) {
            continue;
        }
        clique.push(v);
        grow(g, &back, &pos, &mut clique, back[v].clone(), k, &mut out);
        clique.pop();
    }
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort_unstable();
    Ok(out)
}

/// Extends `clique` by candidates in decreasing position; every `r`-subset
/// through the new vertex is checked against `g`.
fn grow(
    g: &Hypergraph,
    back: &[Vec<Vertex>],
    pos: &[usize],
    clique: &mut Vec<Vertex>,
    cands: Vec<Vertex>,
    k: usize,
    out: &mut Vec<Vec<Vertex>>,
) {
    if clique.len() == k {
        out.push(clique.clone());
        return;
    }
    let r = g.k();
    for (j, &w) in cands.iter().enumerate() {
        let closes = clique.iter().copied().combinations(r - 1).all(|mut s| {
            s.push(w);
            s.sort_unstable();
            g.contains_edge(&s)
        });
        if !closes {
            continue;
        }
        let next: Vec<Vertex> = cands[j + 1..]
            .iter()
            .copied()
            .filter(|u| back[w].contains(u) && pos[*u] < pos[w])
            .collect();
        clique.push(w);
        grow(g, back, pos, clique, next, k, out);
        clique.pop();
    }
}
