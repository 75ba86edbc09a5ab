use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::Serialize;

use super::setup::EmbeddingSetup;
use crate::defect::{omega_theta, Defect};
use crate::error::{Error, Result};
use crate::hypergraph::Vertex;
use crate::oracle::Embedding;
use crate::rng::rng_from_seed;
use crate::skeleton::set_neighborhood;

/// Which rule placed a pattern vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// Uniform without repetition in the last part.
    #[serde(rename = "last")]
    Last,
    /// `N_j` empty: uniform over the whole part.
    #[serde(rename = "3a")]
    EmptyNeighborhood,
    /// `|L_j| < |N_j| / 2`: uniform over `N_j`.
    #[serde(rename = "3b")]
    CrowdedNeighborhood,
    /// Uniform over the unused part `L_j` of the neighbourhood.
    #[serde(rename = "3c")]
    Fresh,
}

/// One run of the random greedy process. Indexed by pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyRun {
    pub psi: Vec<Vertex>,
    pub case_log: Vec<Case>,
    /// `ω(x; ψ)`; zero on the last part.
    pub defect_log: Vec<Defect>,
    /// Pattern vertices in the order they were placed.
    pub order: Vec<Vertex>,
    pub seed: u64,
}

impl GreedyRun {
    pub fn is_injective(&self) -> bool {
        self.psi.iter().all_unique()
    }

    /// Every vertex outside the last part was placed by case 3(c).
    pub fn only_fresh_choices(&self) -> bool {
        self.case_log
            .iter()
            .all(|c| matches!(c, Case::Last | Case::Fresh))
    }

    pub fn to_embedding(&self) -> Embedding {
        Embedding {
            map: self.psi.clone(),
            part_respecting: true,
        }
    }
}

/// Neighbourhood sizes of host vertex sets inside fixed parts, memoised
/// per set; owned by a single run.
#[derive(Default)]
pub(crate) struct NeighborhoodCache {
    sets: HashMap<Vec<Vertex>, Vec<Vertex>>,
}

impl NeighborhoodCache {
    pub(crate) fn neighborhood(
        &mut self,
        g: &crate::hypergraph::Hypergraph,
        q: &[Vertex],
    ) -> &[Vertex] {
        let key: Vec<Vertex> = q.iter().copied().sorted_unstable().dedup().collect();
        self.sets
            .entry(key)
            .or_insert_with_key(|k| set_neighborhood(g, k))
    }
}

fn in_part(layout: &crate::hypergraph::PartiteLayout, nbhd: &[Vertex], i: usize) -> Vec<Vertex> {
    nbhd.iter()
        .copied()
        .filter(|&v| layout.part_of(v) == i)
        .collect()
}

/// The random greedy process. The last part is filled in ascending vertex
/// order by uniform choices without repetition; every earlier part, from
/// last to first, is ordered by non-increasing `ω(x; ψ)` (ties by ascending
/// id) and filled by cases 3(a)-(c).
pub fn random_greedy_embed(setup: &EmbeddingSetup, seed: u64) -> GreedyRun {
    let g = setup.host();
    let gl = setup.host_layout();
    let hl = setup.pattern_layout();
    let kk = setup.num_parts();
    let n = setup.pattern().n();
    let mut rng = rng_from_seed(seed);
    let mut psi = vec![usize::MAX; n];
    let mut case_log = vec![Case::Last; n];
    let mut defect_log = vec![Defect::zero(); n];
    let mut order = Vec::with_capacity(n);
    let mut cache = NeighborhoodCache::default();

    let mut pool = gl.part(kk - 1).to_vec();
    for &x in hl.part(kk - 1) {
        let j = rng.gen_range(0..pool.len());
        psi[x] = pool.swap_remove(j);
        order.push(x);
    }
    for i in (0..kk - 1).rev() {
        let theta = setup.theta(i);
        let mut part: Vec<(Defect, Vertex, Vec<Vertex>)> = hl
            .part(i)
            .iter()
            .map(|&x| {
                let q: Vec<Vertex> = setup.forward_tuple(x).iter().map(|&y| psi[y]).collect();
                let nj = in_part(gl, cache.neighborhood(g, &q), i);
                let w = omega_theta(nj.len() as u64, theta).expect("setup thresholds are positive");
                (w, x, nj)
            })
            .collect();
        part.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut used: Vec<Vertex> = Vec::with_capacity(part.len());
        for (w, x, nj) in part {
            let lj: Vec<Vertex> = nj.iter().copied().filter(|v| !used.contains(v)).collect();
            let (case, v) = if nj.is_empty() {
                (
                    Case::EmptyNeighborhood,
                    *gl.part(i)
                        .choose(&mut rng)
                        .expect("host parts are nonempty"),
                )
            } else if 2 * lj.len() < nj.len() {
                (
                    Case::CrowdedNeighborhood,
                    *nj.choose(&mut rng).expect("nonempty"),
                )
            } else {
                (
                    Case::Fresh,
                    *lj.choose(&mut rng)
                        .expect("L_j is at least half of a nonempty N_j"),
                )
            };
            psi[x] = v;
            case_log[x] = case;
            defect_log[x] = w;
            used.push(v);
            order.push(x);
        }
    }
    GreedyRun {
        psi,
        case_log,
        defect_log,
        order,
        seed,
    }
}

/// Whether `Σ_{x ∈ W_i} ω(x; ψ)^s ≤ θ_i / 2` for every part but the last.
/// Requires `θ_i ≥ 2|W_i|`, under which a true answer certifies that the
/// run is an embedding.
pub fn check_embedding_conditions(setup: &EmbeddingSetup, run: &GreedyRun, s: u32) -> Result<bool> {
    if s == 0 {
        return Err(Error::Argument("exponent s must be at least 1".into()));
    }
    let hl = setup.pattern_layout();
    for i in 0..setup.num_parts() - 1 {
        let w = BigRational::from_integer(BigInt::from(2 * hl.part(i).len()));
        if setup.theta(i) < &w {
            return Err(Error::Precondition(format!(
                "theta_{i} = {} is below 2|W_{i}| = {w}",
                setup.theta(i)
            )));
        }
    }
    Ok(conditions_hold(setup, run, s))
}

/// The budget test of [`check_embedding_conditions`] without its precondition.
pub fn conditions_hold(setup: &EmbeddingSetup, run: &GreedyRun, s: u32) -> bool {
    let hl = setup.pattern_layout();
    (0..setup.num_parts() - 1).all(|i| {
        let sum: Defect = hl.part(i).iter().map(|&x| run.defect_log[x].pow(s)).sum();
        match sum {
            Defect::Infinite => false,
            Defect::Finite(r) => r * BigRational::from_integer(BigInt::from(2)) <= *setup.theta(i),
        }
    })
}

impl EmbeddingSetup {
    /// `γ = max{1, max_{i<K} |V_i| / θ_i}`.
    pub fn gamma(&self) -> BigRational {
        let gl = self.host_layout();
        let one = BigRational::from_integer(BigInt::from(1));
        (0..self.num_parts() - 1)
            .map(|i| BigRational::from_integer(BigInt::from(gl.part(i).len())) / self.theta(i))
            .fold(one, |a, b| if b > a { b } else { a })
    }

    /// `μ_t(x)`: the average of `ω_{θ_x}(Q, V_x)^t` over `Q` in the product
    /// of the host parts of `f_x`. Zero on the last part.
    pub fn mu_t(&self, x: Vertex, t: u32, cap: u64) -> Result<Defect> {
        let gl = self.host_layout();
        let i = self.pattern_layout().part_of(x);
        if i == self.num_parts() - 1 {
            return Ok(Defect::zero());
        }
        let factors: Vec<&[Vertex]> = self
            .forward_tuple(x)
            .iter()
            .map(|&y| gl.part(self.pattern_layout().part_of(y)))
            .collect();
        let count = factors
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.len() as u64));
        match count {
            Some(c) if c <= cap => {}
            _ => {
                return Err(Error::BudgetExceeded {
                    context: format!("product space of f_{x}"),
                    limit: cap,
                })
            }
        }
        let mut cache = NeighborhoodCache::default();
        let mut total = Defect::zero();
        let mut m = 0u64;
        for q in factors
            .iter()
            .map(|f| f.iter().copied())
            .multi_cartesian_product()
        {
            let size = in_part(gl, cache.neighborhood(self.host(), &q), i).len();
            total = total + omega_theta(size as u64, self.theta(i))?.pow(t);
            m += 1;
        }
        Ok(if m == 0 {
            Defect::zero()
        } else {
            total.div_integer(m)
        })
    }

    /// `μ_t = max_x μ_t(x)`.
    pub fn mu_max(&self, t: u32, cap: u64) -> Result<Defect> {
        let mut best = Defect::zero();
        for x in 0..self.pattern().n() {
            best = best.max(self.mu_t(x, t, cap)?);
        }
        Ok(best)
    }
}
