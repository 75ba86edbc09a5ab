//! Reduction from monochromatic containment in an edge coloring to partite
//! containment in a clique hypergraph, and experiments built on it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coloring::EdgeColoring;
use crate::combinatorics::binomial;
use crate::degeneracy::{d1, degeneracy};
use crate::error::{Error, Result};
use crate::generators::{lift_to_uniformity, random_partite_restriction};
use crate::greedy::{linear_turan_pipeline, PipelineOverrides};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::oracle::{find_embedding, find_monochromatic_copy, Embedding};
use crate::rng::derive_seed;
use crate::skeleton::skeleton;
use crate::turan::clique_hypergraph;

/// Largest `C(N, ℓ)` the harvester accepts.
pub const HARVEST_CAP: u128 = 20_000_000;

/// Largest exhaustive sweep, in bits of `q^{C(N,k)}`.
pub const SWEEP_MAX_BITS: f64 = 24.0;

/// For each color `c`, the `ℓ`-uniform hypergraph on `[N]` whose edges are
/// the `ℓ`-sets all of whose `k`-subsets have color `c`.
pub fn harvest_monochromatic_cliques(f: &EdgeColoring, ell: usize) -> Result<Vec<Hypergraph>> {
    let (n, k) = (f.num_vertices(), f.k());
    if ell < k {
        return Err(Error::Argument(format!(
            "clique uniformity {ell} below k = {k}"
        )));
    }
    if binomial(n as u64, ell as u64) > HARVEST_CAP {
        return Err(Error::BudgetExceeded {
            context: format!("{ell}-subsets of [{n}]"),
            limit: HARVEST_CAP as u64,
        });
    }
    (0..f.q())
        .map(|c| clique_hypergraph(&f.class(c), ell))
        .collect()
}

/// Proper coloring of the 1-skeleton, greedy along a degeneracy order, so
/// at most `d_1(H) + 1` colors appear.
pub fn skeleton_coloring(h: &Hypergraph) -> Result<Vec<usize>> {
    let skel = if h.k() >= 2 {
        skeleton(h, 1)?
    } else {
        Hypergraph::empty(2, h.n())
    };
    let order = degeneracy(&skel).order;
    let mut color = vec![usize::MAX; h.n()];
    for &v in &order {
        let mut taken: Vec<usize> = skel
            .incident(v)
            .iter()
            .flat_map(|&ei| skel.edges()[ei].iter().copied())
            .filter(|&u| u != v && color[u] != usize::MAX)
            .map(|u| color[u])
            .collect();
        taken.sort_unstable();
        taken.dedup();
        color[v] = (0..)
            .find(|c| taken.binary_search(c).is_err())
            .expect("unbounded range");
    }
    Ok(color)
}

/// `Ĥ`, `Ĝ` and the color they came from. `back[x]` is the vertex of `[N]`
/// behind vertex `x` of `Ĝ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KrReduction {
    #[serde(skip)]
    pub lifted: Hypergraph,
    #[serde(skip)]
    pub host: Hypergraph,
    pub color: usize,
    pub ell: usize,
    pub vertex_colors: Vec<usize>,
    pub back: Vec<Vertex>,
    /// Edges of each color's clique hypergraph on `[N]`.
    pub clique_counts: Vec<usize>,
    pub lifted_vertices: usize,
    pub host_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KrFailure {
    pub reason: String,
    pub clique_counts: Vec<usize>,
}

impl KrReduction {
    /// The copy of `H` in `[N]` behind an embedding of `Ĥ` in `Ĝ`. Original
    /// pattern vertices come first in `Ĥ`, so the first `v(H)` images are used.
    pub fn pullback(&self, h: &Hypergraph, emb: &Embedding) -> Embedding {
        Embedding {
            map: (0..h.n()).map(|x| self.back[emb.map[x]]).collect(),
            part_respecting: false,
        }
    }

    /// Pulls `emb` back and checks by replay that it is a copy of `H` all of
    /// whose edges have color `self.color` under `f`.
    pub fn verify_pullback(&self, f: &EdgeColoring, h: &Hypergraph, emb: &Embedding) -> bool {
        emb.verify(&self.lifted, &self.host)
            && self.pullback(h, emb).verify(h, &f.class(self.color))
    }
}

/// Lifts `H` to `ℓ` parts along [`skeleton_coloring`], then restricts the
/// largest color's clique hypergraph to a uniform equitable `ℓ`-partition
/// with parts of size `⌊N/ℓ⌋`. Colors are tried by decreasing clique
/// count (ties by ascending color) until the restriction has an edge.
pub fn kr_reduce(
    f: &EdgeColoring,
    h: &Hypergraph,
    ell: usize,
    seed: u64,
) -> Result<std::result::Result<KrReduction, KrFailure>> {
    if h.k() != f.k() {
        return Err(Error::Uniformity {
            pattern: h.k(),
            host: f.k(),
        });
    }
    if ell < h.k() {
        return Err(Error::Argument(format!("ell = {ell} below k = {}", h.k())));
    }
    let vertex_colors = skeleton_coloring(h)?;
    let used = vertex_colors.iter().max().map_or(0, |&c| c + 1);
    if used > ell {
        return Err(Error::Setup(format!(
            "greedy coloring of the 1-skeleton needs {used} colors, more than ell = {ell}"
        )));
    }
    let lifted = lift_to_uniformity(h, ell, &vertex_colors)?;
    let cliques = harvest_monochromatic_cliques(f, ell)?;
    let clique_counts: Vec<usize> = cliques.iter().map(Hypergraph::num_edges).collect();
    let part_size = f.num_vertices() / ell;
    let mut by_size: Vec<usize> = (0..cliques.len()).collect();
    by_size.sort_by_key(|&c| std::cmp::Reverse(clique_counts[c]));
    for c in by_size {
        if clique_counts[c] == 0 || part_size == 0 {
            break;
        }
        let (host, back) = random_partite_restriction(
            &cliques[c],
            ell,
            part_size,
            derive_seed(seed, "kr-restrict", c as u64),
        )?;
        if !host.is_empty() {
            return Ok(Ok(KrReduction {
                lifted_vertices: lifted.n(),
                host_edges: host.num_edges(),
                lifted,
                host,
                color: c,
                ell,
                vertex_colors,
                back,
                clique_counts,
            }));
        }
    }
    Ok(Err(KrFailure {
        reason: "every color class restricts to an empty host".into(),
        clique_counts,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Direct search for a monochromatic copy.
    Oracle,
    /// The reduction followed by the greedy embedding pipeline on `Ĝ`.
    Pipeline,
}

/// Which colorings a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sweep {
    /// All `q^{C(N,k)}` colorings, lexicographically.
    Exhaustive,
    /// Seeded uniform colorings.
    Random { samples: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RamseyExperimentParams {
    /// `ℓ` for the pipeline; defaults to `d_1(H) + 1`.
    pub ell: Option<usize>,
    pub overrides: PipelineOverrides,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamseyReport {
    pub strategy: Strategy,
    pub sweep: Sweep,
    pub n: usize,
    pub q: usize,
    pub k: usize,
    pub pattern_vertices: usize,
    pub colorings: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Successes whose copy was replayed against the coloring.
    pub verified: usize,
    /// Successes whose copy failed the replay; zero unless something is unsound.
    pub unsound: usize,
    /// Failure counts keyed by the stage that failed.
    pub failures: BTreeMap<String, usize>,
    /// First coloring with no copy found.
    pub failing_witness: Option<EdgeColoring>,
    pub ell: Option<usize>,
    pub mean_lifted_vertices: Option<f64>,
    pub mean_host_edges: Option<f64>,
}

fn sweep_colorings(
    n: usize,
    k: usize,
    q: usize,
    sweep: Sweep,
    seed: u64,
) -> Result<Vec<EdgeColoring>> {
    match sweep {
        Sweep::Random { samples } => (0..samples)
            .map(|s| EdgeColoring::random(n, k, q, derive_seed(seed, "ramsey-coloring", s as u64)))
            .collect(),
        Sweep::Exhaustive => {
            let m = binomial(n as u64, k as u64) as usize;
            let bits = m as f64 * (q as f64).log2();
            if bits > SWEEP_MAX_BITS {
                return Err(Error::BudgetExceeded {
                    context: format!("exhaustive sweep of {q}-colorings of K_{n}^({k})"),
                    limit: SWEEP_MAX_BITS as u64,
                });
            }
            let total = q.pow(m as u32);
            (0..total)
                .map(|mut idx| {
                    let colors = (0..m)
                        .map(|_| {
                            let c = idx % q;
                            idx /= q;
                            c
                        })
                        .collect();
                    EdgeColoring::new(n, k, q, colors)
                })
                .collect()
        }
    }
}

/// Looks for a monochromatic copy of `h` in each swept coloring of
/// `K_N^{(k)}`. Every reported copy is replayed against its coloring.
pub fn ramsey_experiment(
    h: &Hypergraph,
    q: usize,
    n: usize,
    strategy: Strategy,
    sweep: Sweep,
    params: &RamseyExperimentParams,
    seed: u64,
) -> Result<RamseyReport> {
    let k = h.k();
    if q == 0 {
        return Err(Error::Argument("need at least one color".into()));
    }
    let colorings = sweep_colorings(n, k, q, sweep, seed)?;
    let ell = match strategy {
        Strategy::Oracle => None,
        Strategy::Pipeline => Some(params.ell.unwrap_or(d1(h) + 1).max(k)),
    };
    let mut report = RamseyReport {
        strategy,
        sweep,
        n,
        q,
        k,
        pattern_vertices: h.n(),
        colorings: colorings.len(),
        successes: 0,
        success_rate: 0.0,
        verified: 0,
        unsound: 0,
        failures: BTreeMap::new(),
        failing_witness: None,
        ell,
        mean_lifted_vertices: None,
        mean_host_edges: None,
    };
    let (mut lifted_sum, mut host_sum, mut reduced) = (0usize, 0usize, 0usize);
    for (i, f) in colorings.iter().enumerate() {
        let run_seed = derive_seed(seed, "ramsey-run", i as u64);
        let outcome: std::result::Result<bool, String> = match strategy {
            Strategy::Oracle => match find_monochromatic_copy(f, h)? {
                Some((c, emb)) => Ok(emb.verify(h, &f.class(c))),
                None => Err("oracle".into()),
            },
            Strategy::Pipeline => match kr_reduce(f, h, ell.expect("pipeline sets ell"), run_seed)?
            {
                Err(_) => Err("kr-reduce".into()),
                Ok(red) => {
                    reduced += 1;
                    lifted_sum += red.lifted_vertices;
                    host_sum += red.host_edges;
                    match linear_turan_pipeline(
                        &red.host,
                        &red.lifted,
                        &params.overrides,
                        run_seed,
                    )? {
                        Ok(s) => Ok(red.verify_pullback(f, h, &s.embedding)),
                        Err(fail) => Err(format!("pipeline:{}", fail.stage)),
                    }
                }
            },
        };
        match outcome {
            Ok(sound) => {
                report.successes += 1;
                if sound {
                    report.verified += 1;
                } else {
                    report.unsound += 1;
                }
            }
            Err(stage) => {
                *report.failures.entry(stage).or_default() += 1;
                if report.failing_witness.is_none() {
                    report.failing_witness = Some(f.clone());
                }
            }
        }
    }
    if !colorings.is_empty() {
        report.success_rate = report.successes as f64 / colorings.len() as f64;
    }
    if reduced > 0 {
        report.mean_lifted_vertices = Some(lifted_sum as f64 / reduced as f64);
        report.mean_host_edges = Some(host_sum as f64 / reduced as f64);
    }
    Ok(report)
}

/// [`kr_reduce`] followed by an exhaustive partite search for `Ĥ` in `Ĝ`;
/// any copy found is pulled back and replayed.
pub fn kr_reduce_and_search(
    f: &EdgeColoring,
    h: &Hypergraph,
    ell: usize,
    seed: u64,
) -> Result<Option<(KrReduction, Option<Embedding>)>> {
    let Ok(red) = kr_reduce(f, h, ell, seed)? else {
        return Ok(None);
    };
    let emb = find_embedding(&red.lifted, &red.host, true)?;
    Ok(Some((red, emb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn cycle(n: usize) -> Hypergraph {
        Hypergraph::new(
            2,
            n,
            (0..n)
                .map(|i| vec![i.min((i + 1) % n), i.max((i + 1) % n)])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn one_color_harvests_everything() {
        let f = EdgeColoring::new(6, 2, 1, vec![0; 15]).unwrap();
        let g = harvest_monochromatic_cliques(&f, 3).unwrap();
        assert_eq!(g[0].num_edges(), 20);
        let same = harvest_monochromatic_cliques(&f, 2).unwrap();
        assert_eq!(same[0], f.class(0));
    }

    #[test]
    fn harvest_replays_definition() {
        let f = EdgeColoring::random(7, 2, 2, 4).unwrap();
        let g = harvest_monochromatic_cliques(&f, 3).unwrap();
        for s in (0..7).combinations(3) {
            for (c, gc) in g.iter().enumerate() {
                let mono = s
                    .iter()
                    .copied()
                    .combinations(2)
                    .all(|e| f.color_of(&e) == c);
                assert_eq!(gc.contains_edge(&s), mono);
            }
        }
    }

    #[test]
    fn coloring_is_proper_within_degeneracy() {
        let h = cycle(5);
        let c = skeleton_coloring(&h).unwrap();
        assert!(h.edges().iter().all(|e| c[e[0]] != c[e[1]]));
        assert!(*c.iter().max().unwrap() <= d1(&h));
    }

    #[test]
    fn single_color_single_edge() {
        let f = EdgeColoring::new(6, 2, 1, vec![0; 15]).unwrap();
        let h = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        let (red, emb) = kr_reduce_and_search(&f, &h, 2, 3).unwrap().unwrap();
        assert_eq!(red.host.num_edges(), 9);
        assert!(red.verify_pullback(&f, &h, &emb.unwrap()));
    }

    #[test]
    fn adversarial_coloring_fails() {
        // a 2-coloring of K_5 with no monochromatic triangle
        let f = EdgeColoring::from_fn(5, 2, 2, |e| usize::from(matches!((e[1] - e[0]) % 5, 1 | 4)))
            .unwrap();
        let h = Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(kr_reduce(&f, &h, 3, 0).unwrap().is_err());
        assert!(matches!(
            kr_reduce(&f, &cycle(5), 2, 0),
            Err(Error::Setup(_))
        ));
    }

    #[test]
    fn c4_pullbacks_are_monochromatic() {
        let h = cycle(4);
        let mut found = 0;
        for s in 0..10 {
            let f = EdgeColoring::random(20, 2, 2, s).unwrap();
            if let Some((red, Some(emb))) = kr_reduce_and_search(&f, &h, 2, s).unwrap() {
                assert!(red.verify_pullback(&f, &h, &emb));
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn single_edge_always_succeeds() {
        let h = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        let r = ramsey_experiment(
            &h,
            3,
            2,
            Strategy::Oracle,
            Sweep::Exhaustive,
            &Default::default(),
            0,
        )
        .unwrap();
        assert_eq!((r.colorings, r.successes, r.verified), (3, 3, 3));
    }
}
