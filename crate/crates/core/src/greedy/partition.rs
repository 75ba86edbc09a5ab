use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng as _;
use serde::Serialize;

use super::algorithm::NeighborhoodCache;
use crate::combinatorics::binomial;
use crate::defect::{omega_theta, Defect};
use crate::degeneracy::d1;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rng::{stage_rng, Rng};
use crate::skeleton::skeleton;

/// A refinement `W_i^{(j)}` of the pattern's classes into levels by
/// skeleton degree. `blocks[i][j]` is level `i` (zero-based) of class `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPartition {
    pub levels: usize,
    pub blocks: Vec<Vec<Vec<Vertex>>>,
    pub level_of: Vec<usize>,
}

/// `U_1 = V(H)`, `U_{i+1}` = vertices of degree at least `4d` in
/// `H^{(1)}[U_i]`, level `i` = `U_i ∖ U_{i+1}`. Conclusions (i)-(iv) are
/// checked before returning.
pub fn h_partition(h: &Hypergraph, d: usize) -> Result<HPartition> {
    let layout = h.require_layout()?;
    if d == 0 {
        return Err(Error::Argument("degree bound d must be positive".into()));
    }
    let d_1 = d1(h);
    if d < d_1 {
        return Err(Error::Degeneracy {
            actual: d_1,
            bound: d,
        });
    }
    let skel = if h.k() >= 2 {
        skeleton(h, 1)?
    } else {
        Hypergraph::empty(2, h.n())
    };
    let n = h.n();
    let mut level_of = vec![0; n];
    let mut current: Vec<Vertex> = (0..n).collect();
    let mut level = 0;
    while !current.is_empty() {
        let mut inside = vec![false; n];
        for &v in &current {
            inside[v] = true;
        }
        let next: Vec<Vertex> = current
            .iter()
            .copied()
            .filter(|&v| {
                skel.incident(v)
                    .iter()
                    .filter(|&&ei| skel.edges()[ei].iter().all(|&u| inside[u]))
                    .count()
                    >= 4 * d
            })
            .collect();
        for &v in &current {
            level_of[v] = level;
        }
        current = next;
        level += 1;
    }
    let levels = level;
    let mut blocks = vec![vec![Vec::new(); layout.num_parts()]; levels];
    for v in 0..n {
        blocks[level_of[v]][layout.part_of(v)].push(v);
    }
    let out = HPartition {
        levels,
        blocks,
        level_of,
    };
    let failures = out.conclusion_failures(h, d);
    if !failures.is_empty() {
        return Err(Error::Precondition(format!(
            "H-partition conclusions failed: {}",
            failures.join("; ")
        )));
    }
    Ok(out)
}

impl HPartition {
    /// Conclusions (i)-(iv) that fail; empty when all hold. (i) is read as
    /// `2^T ≤ n`, and as `T ≤ 1` for a single vertex.
    pub fn conclusion_failures(&self, h: &Hypergraph, d: usize) -> Vec<String> {
        let mut out = Vec::new();
        let n = h.n();
        let t = self.levels;
        let within_log = match n {
            0 => t == 0,
            1 => t <= 1,
            _ => t < usize::BITS as usize && (1usize << t) <= n,
        };
        if !within_log {
            out.push(format!("(i): T = {t} exceeds log2 {n}"));
        }
        for (i, row) in self.blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                // |W| ≤ 2^{-i} n with zero-based i
                if i < usize::BITS as usize && (b.len() << i) > n {
                    out.push(format!(
                        "(ii): |W_{}^({})| = {} exceeds 2^-{} n",
                        i + 1,
                        j + 1,
                        b.len(),
                        i
                    ));
                }
            }
        }
        let Some(layout) = h.layout() else {
            out.push("(iii): pattern has no layout".into());
            return out;
        };
        for j in 0..layout.num_parts() {
            let union: Vec<Vertex> = self
                .blocks
                .iter()
                .flat_map(|row| row[j].iter().copied())
                .sorted_unstable()
                .collect();
            if union != layout.part(j) {
                out.push(format!(
                    "(iii): levels of class {} do not recover it",
                    j + 1
                ));
            }
        }
        if h.k() >= 2 {
            let skel = skeleton(h, 1).expect("k >= 2");
            for v in 0..n {
                let lv = self.level_of[v];
                let later = skel
                    .incident(v)
                    .iter()
                    .flat_map(|&ei| skel.edges()[ei].iter().copied())
                    .filter(|&u| u != v && self.level_of[u] >= lv)
                    .unique()
                    .count();
                if later > 4 * d {
                    out.push(format!(
                        "(iv): vertex {v} has {later} neighbours in later levels"
                    ));
                }
            }
        }
        out
    }

    /// Block `(i, j)` in lexicographic order, i.e. position `i·k + j`.
    pub fn lex_blocks(&self) -> Vec<&[Vertex]> {
        self.blocks
            .iter()
            .flat_map(|row| row.iter().map(|b| b.as_slice()))
            .collect()
    }
}

/// Parameters of the host partition. Thresholds are exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct GPartitionParams {
    /// Number of levels `T`.
    pub levels: usize,
    /// Tuple length.
    pub d: usize,
    pub t: u32,
    pub theta: BigRational,
    /// `p_1..p_T`.
    pub p: Vec<f64>,
    pub epsilon: BigRational,
    pub epsilon_prime: BigRational,
    pub retries: usize,
    /// Tuple spaces up to this size are enumerated, larger ones sampled.
    pub enumeration_cap: u64,
    /// Index tuples drawn when their space exceeds the cap.
    pub index_samples: usize,
    /// Host tuples drawn per sampled average.
    pub tuple_samples: usize,
    /// Products of blocks up to this size are averaged exactly in the checks.
    pub product_cap: u64,
}

impl GPartitionParams {
    pub fn new(levels: usize, d: usize, t: u32, theta: BigRational, p: Vec<f64>) -> Self {
        Self {
            levels,
            d,
            t,
            theta,
            p,
            epsilon: BigRational::new(BigInt::from(1), BigInt::from(8)),
            epsilon_prime: BigRational::one(),
            retries: 64,
            enumeration_cap: 100_000,
            index_samples: 10_000,
            tuple_samples: 256,
            product_cap: 4096,
        }
    }

    /// `θ_i = p_i θ / 4`.
    pub fn theta_i(&self, i: usize) -> BigRational {
        rational_from_f64(self.p[i]) * &self.theta / BigRational::from_integer(BigInt::from(4))
    }
}

pub(crate) fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

/// Disjoint host blocks `V_i^{(j)} ⊆ A_j` with diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GPartition {
    /// `blocks[i][j]`, in input ids.
    pub blocks: Vec<Vec<Vec<Vertex>>>,
    /// `B_j`: the parts with heavy vertices trimmed.
    pub trimmed: Vec<Vec<Vertex>>,
    /// `μ_{θ,t}(A_{-j}^d, A_j)` per class.
    pub mu_parts: Vec<Defect>,
    /// Partition hypotheses that failed; the run proceeds.
    pub flags: Vec<String>,
    /// Whether any average in the construction or its checks was sampled.
    pub sampled: bool,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GPartitionFailure {
    pub reason: String,
    pub flags: Vec<String>,
    pub attempts: usize,
    pub sampled: bool,
}

/// Averages of `ω_θ(Q, target)^t` over products of vertex sets, exact when
/// the product is small and sampled otherwise.
struct Averager<'a> {
    g: &'a Hypergraph,
    cache: NeighborhoodCache,
    cap: u64,
    samples: usize,
    sampled: bool,
}

impl<'a> Averager<'a> {
    fn new(g: &'a Hypergraph, cap: u64, samples: usize) -> Self {
        Self {
            g,
            cache: NeighborhoodCache::default(),
            cap,
            samples,
            sampled: false,
        }
    }

    fn omega(&mut self, q: &[Vertex], target: &[bool], theta: &BigRational, t: u32) -> Defect {
        let size = self
            .cache
            .neighborhood(self.g, q)
            .iter()
            .filter(|&&v| target[v])
            .count();
        omega_theta(size as u64, theta)
            .expect("positive threshold")
            .pow(t)
    }

    fn average(
        &mut self,
        factors: &[&[Vertex]],
        target: &[bool],
        theta: &BigRational,
        t: u32,
        rng: &mut Rng,
    ) -> Defect {
        if factors.iter().any(|f| f.is_empty()) {
            return Defect::zero();
        }
        let count = factors
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.len() as u64));
        match count {
            Some(c) if c <= self.cap => {
                let mut total = Defect::zero();
                for q in factors
                    .iter()
                    .map(|f| f.iter().copied())
                    .multi_cartesian_product()
                {
                    total = total + self.omega(&q, target, theta, t);
                    if total.is_infinite() {
                        return total;
                    }
                }
                total.div_integer(c)
            }
            _ => {
                self.sampled = true;
                let mut total = Defect::zero();
                for _ in 0..self.samples {
                    let q: Vec<Vertex> = factors
                        .iter()
                        .map(|f| f[rng.gen_range(0..f.len())])
                        .collect();
                    total = total + self.omega(&q, target, theta, t);
                    if total.is_infinite() {
                        return total;
                    }
                }
                total.div_integer(self.samples as u64)
            }
        }
    }

    /// `Σ_{Q ∈ pool^d, v ∈ Q} ω^t` for every `v` in `pool`. Sampled with
    /// `v` planted at a uniform position and reweighted by its multiplicity.
    fn vertex_sums(
        &mut self,
        pool: &[Vertex],
        d: usize,
        target: &[bool],
        theta: &BigRational,
        t: u32,
        rng: &mut Rng,
    ) -> HashMap<Vertex, Defect> {
        let m = pool.len() as u64;
        let mut out: HashMap<Vertex, Defect> = pool.iter().map(|&v| (v, Defect::zero())).collect();
        if pool.is_empty() || d == 0 {
            return out;
        }
        match m.checked_pow(d as u32) {
            Some(c) if c <= self.cap => {
                for q in std::iter::repeat_n(pool.iter().copied(), d).multi_cartesian_product() {
                    let w = self.omega(&q, target, theta, t);
                    for v in q.iter().copied().unique() {
                        let slot = out.get_mut(&v).expect("pool vertex");
                        *slot = std::mem::replace(slot, Defect::zero()) + w.clone();
                    }
                }
            }
            _ => {
                self.sampled = true;
                let per_vertex = (self.samples / pool.len()).max(16);
                let scale =
                    BigRational::from_integer(BigInt::from(d) * BigInt::from(m).pow(d as u32 - 1));
                for &v in pool {
                    let mut total = Defect::zero();
                    for _ in 0..per_vertex {
                        let at = rng.gen_range(0..d);
                        let q: Vec<Vertex> = (0..d)
                            .map(|a| {
                                if a == at {
                                    v
                                } else {
                                    pool[rng.gen_range(0..pool.len())]
                                }
                            })
                            .collect();
                        let mult = q.iter().filter(|&&u| u == v).count() as u64;
                        total = total + self.omega(&q, target, theta, t).div_integer(mult);
                        if total.is_infinite() {
                            break;
                        }
                    }
                    let est = total.div_integer(per_vertex as u64) * Defect::Finite(scale.clone());
                    out.insert(v, est);
                }
            }
        }
        out
    }
}

/// `c ≥ M^{d - 5/8}`, decided exactly as `c^8 ≥ M^{8d - 5}`.
fn is_heavy(c: &Defect, m: usize, d: usize) -> bool {
    match c {
        Defect::Infinite => true,
        Defect::Finite(r) => {
            // d >= 1, so the exponent 8d - 5 is positive
            num_traits::pow(r.clone(), 8)
                >= BigRational::from_integer(BigInt::from(m).pow((8 * d - 5) as u32))
        }
    }
}

/// The randomized host partition: trim heavy vertices `R_i` from every
/// other part, send each surviving vertex of `B_j` to level `i` with
/// probability `p_i / 2`, and accept when the size window and the average
/// defect bound both hold.
pub fn g_partition(
    g: &Hypergraph,
    params: &GPartitionParams,
    seed: u64,
) -> Result<std::result::Result<GPartition, GPartitionFailure>> {
    let layout = g.require_transversal_layout()?;
    let k = g.k();
    let tt = params.levels;
    let d = params.d;
    let t = params.t;
    if params.p.len() != tt || tt == 0 {
        return Err(Error::Argument(format!(
            "{} level probabilities for T = {tt}",
            params.p.len()
        )));
    }
    if d == 0 {
        return Err(Error::Argument("tuple length must be positive".into()));
    }
    let mut flags = Vec::new();
    if g.is_empty() {
        flags.push("host has no edges: every average defect is infinite".into());
        return Ok(Err(GPartitionFailure {
            reason: "empty host".into(),
            flags,
            attempts: 0,
            sampled: false,
        }));
    }
    let n = g.n();
    let sizes: Vec<usize> = (0..k).map(|j| layout.part(j).len()).collect();
    let m = *sizes.iter().max().expect("k >= 1");
    let eps_m = &params.epsilon * BigRational::from_integer(BigInt::from(m));
    for (j, &s) in sizes.iter().enumerate() {
        if BigRational::from_integer(BigInt::from(s)) < eps_m {
            flags.push(format!("|A_{}| = {s} is below epsilon * m", j + 1));
        }
    }
    if params.t < 4 * d as u32 {
        flags.push(format!("t = {t} is below 4d = {}", 4 * d));
    }
    if params.theta < eps_m {
        flags.push("theta is below epsilon * m".into());
    }
    let p_sum: f64 = params.p.iter().sum();
    if p_sum > 1.0 + 1e-12 {
        flags.push(format!("sum of p_i = {p_sum} exceeds 1"));
    }
    let p_floor = (m as f64).powf(-1.0 / (10.0 * d as f64));
    if params.p.iter().any(|&p| p < p_floor) {
        flags.push(format!("some p_i is below m^(-1/(10d)) = {p_floor:.4}"));
    }

    let mut rng = stage_rng(seed, "g-partition-trim", 0);
    let mut avg = Averager::new(g, params.enumeration_cap, params.tuple_samples);
    let mut mu_parts = Vec::with_capacity(k);
    let mut heavy = vec![false; n];
    for i in 0..k {
        let mut target = vec![false; n];
        for &v in layout.part(i) {
            target[v] = true;
        }
        let pool = layout.outside(i);
        let factors: Vec<&[Vertex]> = vec![pool.as_slice(); d];
        let mu = avg.average(&factors, &target, &params.theta, t, &mut rng);
        if mu >= Defect::Finite(BigRational::new(BigInt::from(1), BigInt::from(2))) {
            flags.push(format!(
                "mu(A_-{0}^d, A_{0}) = {mu} is not below 1/2",
                i + 1
            ));
        }
        mu_parts.push(mu);
        for (v, c) in avg.vertex_sums(&pool, d, &target, &params.theta, t, &mut rng) {
            if is_heavy(&c, pool.len(), d) {
                heavy[v] = true;
            }
        }
    }
    let trimmed: Vec<Vec<Vertex>> = (0..k)
        .map(|j| {
            layout
                .part(j)
                .iter()
                .copied()
                .filter(|&v| !heavy[v])
                .collect()
        })
        .collect();

    let thetas: Vec<BigRational> = (0..tt).map(|i| params.theta_i(i)).collect();
    let k_pow = BigRational::from_integer(BigInt::from(k).pow(d as u32));
    let eps_pow = num_traits::pow(params.epsilon.clone(), d);
    let bounds: Vec<Defect> = mu_parts
        .iter()
        .map(|mu| {
            let scaled = match mu {
                Defect::Infinite => Defect::Infinite,
                Defect::Finite(r) => Defect::Finite(
                    BigRational::from_integer(BigInt::from(8)) * &k_pow * r / &eps_pow,
                ),
            };
            scaled.max(Defect::Finite(params.epsilon_prime.clone()))
        })
        .collect();

    // index multisets: the average over a product does not depend on the
    // order of its factors
    let pairs: Vec<(usize, usize)> = (0..tt).cartesian_product(0..k).collect();
    let mut last_reason = String::new();
    for attempt in 0..params.retries.max(1) {
        let mut rng = stage_rng(seed, "g-partition-assign", attempt as u64);
        let mut blocks = vec![vec![Vec::new(); k]; tt];
        for (j, b) in trimmed.iter().enumerate() {
            for &v in b {
                let r: f64 = rng.gen();
                let mut acc = 0.0;
                for i in 0..tt {
                    acc += params.p[i] / 2.0;
                    if r < acc {
                        blocks[i][j].push(v);
                        break;
                    }
                }
            }
        }
        if let Some(why) = size_window_violation(&blocks, &params.p, &sizes) {
            last_reason = why;
            continue;
        }
        let mut member = vec![usize::MAX; n];
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                for &v in b {
                    member[v] = i * k + j;
                }
            }
        }
        let mut check = Averager::new(g, params.product_cap, params.tuple_samples);
        let mut violation = None;
        'outer: for i in 0..tt {
            for j in 0..k {
                let target: Vec<bool> = member.iter().map(|&b| b == i * k + j).collect();
                let others: Vec<(usize, usize)> =
                    pairs.iter().copied().filter(|&(_, jj)| jj != j).collect();
                let space = binomial((others.len() + d - 1) as u64, d as u64);
                let multisets: Vec<Vec<(usize, usize)>> =
                    if space <= u128::from(params.enumeration_cap) {
                        others
                            .iter()
                            .copied()
                            .combinations_with_replacement(d)
                            .collect()
                    } else {
                        check.sampled = true;
                        let per_block = (params.index_samples / (tt * k)).max(1);
                        (0..per_block)
                            .map(|_| {
                                (0..d)
                                    .map(|_| others[rng.gen_range(0..others.len())])
                                    .collect()
                            })
                            .collect()
                    };
                for idx in multisets {
                    let factors: Vec<&[Vertex]> =
                        idx.iter().map(|&(a, b)| blocks[a][b].as_slice()).collect();
                    let mu = check.average(&factors, &target, &thetas[i], t, &mut rng);
                    if mu > bounds[j] {
                        violation = Some(format!(
                            "(ii) fails at level {}, class {}: mu = {mu}, bound {}",
                            i + 1,
                            j + 1,
                            bounds[j]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        let sampled = avg.sampled || check.sampled;
        match violation {
            Some(why) => last_reason = why,
            None => {
                return Ok(Ok(GPartition {
                    blocks,
                    trimmed,
                    mu_parts,
                    flags,
                    sampled,
                    attempts: attempt + 1,
                }));
            }
        }
    }
    Ok(Err(GPartitionFailure {
        reason: last_reason,
        flags,
        attempts: params.retries.max(1),
        sampled: avg.sampled,
    }))
}

/// Conclusion (i): `¼ p_i |A_j| ≤ |V_i^{(j)}| ≤ p_i |A_j|`.
fn size_window_violation(
    blocks: &[Vec<Vec<Vertex>>],
    p: &[f64],
    sizes: &[usize],
) -> Option<String> {
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            let hi = p[i] * sizes[j] as f64;
            let s = b.len() as f64;
            if s < hi / 4.0 || s > hi {
                return Some(format!(
                    "(i) fails: |V_{}^({})| = {} outside [{:.2}, {:.2}]",
                    i + 1,
                    j + 1,
                    b.len(),
                    hi / 4.0,
                    hi
                ));
            }
        }
    }
    None
}

/// The level schedule `p_i = c · 2^{-i/(80d)}`, normalised to sum to 1.
pub fn level_schedule(levels: usize, d: usize) -> Vec<f64> {
    let raw: Vec<f64> = (1..=levels)
        .map(|i| 2f64.powf(-(i as f64) / (80.0 * d as f64)))
        .collect();
    let c: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / c).collect()
}
