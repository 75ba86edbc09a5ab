use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::algorithm::{conditions_hold, random_greedy_embed, GreedyRun};
use super::partition::{
    g_partition, h_partition, level_schedule, rational_from_f64, GPartitionParams,
};
use super::setup::build_setup_with_classes;
use crate::degeneracy::d1;
use crate::drc::simultaneous_prune;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartiteLayout, Vertex};
use crate::oracle::Embedding;
use crate::rng::derive_seed;

/// Replacements for the pipeline's constants. Unset fields take the asymptotic
/// formulas when `paper_constants` holds and desk-scale defaults otherwise:
/// `η = 1/2`, `t = 4`, `ε = η³`, `ε' = 1`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PipelineOverrides {
    pub eta: Option<f64>,
    /// Global threshold; defaults to `η³ n`.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub theta: Option<BigRational>,
    /// Defect exponent `t`; asymptotically `16d`.
    pub t: Option<u32>,
    /// Forward tuple length; defaults to `4d`.
    pub tuple_len: Option<usize>,
    /// Exponent `s` of the embedding condition; defaults to twice the tuple length.
    pub condition_exponent: Option<u32>,
    /// Retry budget for each randomized stage.
    pub retries: Option<usize>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub epsilon: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub epsilon_prime: Option<BigRational>,
    pub paper_constants: bool,
}

fn ser_opt_ratio<S: serde::Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Constants actually used, and what each stage reported.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineDiagnostics {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub density: f64,
    /// Natural log of `η`; finite even when `η` underflows.
    pub log_eta: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub theta: BigRational,
    pub t: u32,
    pub tuple_len: usize,
    pub condition_exponent: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon_prime: BigRational,
    pub retries: usize,
    pub regime: &'static str,
    pub levels: Option<usize>,
    pub padded_vertices: usize,
    pub prune_attempts: usize,
    pub pruned_edges: Option<usize>,
    pub partition_flags: Vec<String>,
    pub partition_sampled: bool,
    pub partition_attempts: usize,
    pub embed_attempts: usize,
    /// Whether the conditions precondition `θ_i ≥ 2|W_i|` held.
    pub conditions_applicable: bool,
    /// Per embedding attempt, whether the defect budget held.
    pub conditions_held: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineSuccess {
    /// Part-respecting embedding of the input pattern into the input host.
    pub embedding: Embedding,
    pub run: GreedyRun,
    pub diagnostics: PipelineDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineFailure {
    pub stage: &'static str,
    pub reason: String,
    pub diagnostics: PipelineDiagnostics,
}

/// `ln η` for `η = p^{(4d/(k-1))(16d+1)^k} / (2^{2^{4d}+1} k^{4d+1})`.
pub fn asymptotic_log_eta(p: f64, k: usize, d: usize) -> f64 {
    let (kf, df) = (k as f64, d as f64);
    (4.0 * df / (kf - 1.0)) * (16.0 * df + 1.0).powf(kf) * p.ln()
        - (2f64.powf(4.0 * df) + 1.0) * std::f64::consts::LN_2
        - (4.0 * df + 1.0) * kf.ln()
}

fn ratio_u(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Pattern-partition, simultaneous pruning, host partition, setup, greedy
/// embedding, verification. Each randomized stage retries on derived
/// seeds; the returned embedding is always oracle-verified.
pub fn linear_turan_pipeline(
    g: &Hypergraph,
    h: &Hypergraph,
    overrides: &PipelineOverrides,
    seed: u64,
) -> Result<std::result::Result<PipelineSuccess, PipelineFailure>> {
    let gl = g.require_transversal_layout()?;
    if !gl.is_balanced() {
        return Err(Error::Layout("host parts must have equal sizes".into()));
    }
    let hl = h.require_layout()?;
    if h.k() != g.k() {
        return Err(Error::Uniformity {
            pattern: h.k(),
            host: g.k(),
        });
    }
    let k = g.k();
    if hl.num_parts() != k {
        return Err(Error::Layout(format!(
            "pattern has {} parts, expected {k}",
            hl.num_parts()
        )));
    }
    let n = gl.part(0).len();
    let d = d1(h).max(1);
    let density = g.num_edges() as f64 / (n as f64).powi(k as i32);
    let asymptotic = overrides.paper_constants;
    let log_eta = match overrides.eta {
        Some(e) => e.ln(),
        None if asymptotic => asymptotic_log_eta(density, k, d),
        None => 0.5f64.ln(),
    };
    let log_theta = 3.0 * log_eta + (n as f64).ln();
    let theta = match &overrides.theta {
        Some(t) => t.clone(),
        None => rational_from_f64(log_theta.exp()),
    };
    let t = overrides
        .t
        .unwrap_or(if asymptotic { 16 * d as u32 } else { 4 });
    let tuple_len = overrides.tuple_len.unwrap_or(4 * d);
    let condition_exponent = overrides.condition_exponent.unwrap_or(2 * tuple_len as u32);
    let retries = overrides.retries.unwrap_or(64).max(1);
    let epsilon = overrides
        .epsilon
        .clone()
        .unwrap_or_else(|| rational_from_f64((3.0 * log_eta).exp()));
    let epsilon_prime = overrides.epsilon_prime.clone().unwrap_or_else(|| {
        if asymptotic {
            rational_from_f64((34.0 * d as f64 * log_eta).exp())
        } else {
            BigRational::one()
        }
    });
    let subasymptotic =
        theta < BigRational::one() || (overrides.theta.is_none() && log_theta < 0.0);
    let mut diag = PipelineDiagnostics {
        k,
        n,
        d,
        density,
        log_eta,
        theta: theta.clone(),
        t,
        tuple_len,
        condition_exponent,
        epsilon: epsilon.clone(),
        epsilon_prime: epsilon_prime.clone(),
        retries,
        regime: if subasymptotic {
            "subasymptotic"
        } else {
            "desk"
        },
        levels: None,
        padded_vertices: 0,
        prune_attempts: 0,
        pruned_edges: None,
        partition_flags: Vec::new(),
        partition_sampled: false,
        partition_attempts: 0,
        embed_attempts: 0,
        conditions_applicable: false,
        conditions_held: Vec::new(),
    };
    let fail = |stage: &'static str, reason: String, diagnostics: PipelineDiagnostics| {
        Ok(Err(PipelineFailure {
            stage,
            reason,
            diagnostics,
        }))
    };
    if subasymptotic {
        return fail(
            "parameters",
            format!("theta = eta^3 n is below 1 (ln theta = {log_theta:.3e})"),
            diag,
        );
    }
    if g.is_empty() {
        return fail("parameters", "host has no edges".into(), diag);
    }

    // pattern partition, padding every empty top-level class with an isolated vertex
    let hp = h_partition(h, d)?;
    let levels = hp.levels.max(1);
    diag.levels = Some(levels);
    let mut blocks_h: Vec<Vec<Vec<Vertex>>> = hp.blocks.clone();
    blocks_h.resize(levels, vec![Vec::new(); k]);
    let mut hn = h.n();
    for j in 0..k {
        if blocks_h[levels - 1][j].is_empty() {
            blocks_h[levels - 1][j].push(hn);
            hn += 1;
        }
    }
    diag.padded_vertices = hn - h.n();
    let padded = Hypergraph::new(k, hn, h.edges().to_vec())?;

    // simultaneous pruning until the pruned host keeps its edge share
    let floor = 0.5 * density.powf(((t as f64) + 1.0).powi(k as i32)) * (n as f64).powi(k as i32);
    let mut pruned = None;
    for attempt in 0..retries {
        diag.prune_attempts = attempt + 1;
        let r = simultaneous_prune(
            g,
            t as usize,
            derive_seed(seed, "pipeline-prune", attempt as u64),
        )?;
        if !r.pruned.is_empty() && r.pruned.num_edges() as f64 >= floor {
            pruned = Some(r);
            break;
        }
    }
    let Some(pruned) = pruned else {
        return fail(
            "simultaneous-prune",
            format!("no pruning kept {floor:.3} edges"),
            diag,
        );
    };
    diag.pruned_edges = Some(pruned.pruned.num_edges());
    let gp = &pruned.pruned;

    let mut gparams = GPartitionParams::new(
        levels,
        tuple_len,
        t,
        theta.clone(),
        level_schedule(levels, d),
    );
    gparams.epsilon = epsilon;
    gparams.epsilon_prime = epsilon_prime;
    gparams.retries = retries;
    let part = match g_partition(gp, &gparams, derive_seed(seed, "pipeline-partition", 0))? {
        Ok(p) => p,
        Err(f) => {
            diag.partition_flags = f.flags;
            diag.partition_sampled = f.sampled;
            diag.partition_attempts = f.attempts;
            return fail("g-partition", f.reason, diag);
        }
    };
    diag.partition_flags = part.flags.clone();
    diag.partition_sampled = part.sampled;
    diag.partition_attempts = part.attempts;

    // setup host: the union of the blocks in lexicographic block order,
    // isolated vertices dropped
    let kk = levels * k;
    let lex: Vec<&Vec<Vertex>> = part.blocks.iter().flat_map(|row| row.iter()).collect();
    let verts: Vec<Vertex> = lex.iter().flat_map(|b| b.iter().copied()).collect();
    let mut assignment = Vec::with_capacity(verts.len());
    for (b, block) in lex.iter().enumerate() {
        assignment.extend(std::iter::repeat_n(b, block.len()));
    }
    let host_union = gp
        .induced(&verts)
        .without_layout()
        .with_layout(PartiteLayout::from_assignment(&assignment, kk)?)?;
    let (host, kept) = host_union.without_isolated();
    let to_g: Vec<Vertex> = kept
        .iter()
        .map(|&x| pruned.original_ids[verts[x]])
        .collect();

    let mut h_assign = vec![0; hn];
    for (i, row) in blocks_h.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            for &x in b {
                h_assign[x] = i * k + j;
            }
        }
    }
    let pattern = padded.with_layout(PartiteLayout::from_assignment(&h_assign, kk)?)?;
    let thetas: Vec<BigRational> = (0..kk - 1).map(|b| gparams.theta_i(b / k)).collect();
    let classes: Vec<usize> = (0..kk).map(|b| b % k).collect();
    let order: Vec<usize> = (0..kk).collect();
    let setup =
        match build_setup_with_classes(&host, &pattern, &order, &thetas, tuple_len, &classes) {
            Ok(s) => s,
            Err(Error::Setup(why)) => return fail("setup", why, diag),
            Err(e) => return Err(e),
        };
    let pl = setup.pattern_layout();
    diag.conditions_applicable =
        (0..kk - 1).all(|b| setup.theta(b) >= &ratio_u(2 * pl.part(b).len()));

    for attempt in 0..retries {
        diag.embed_attempts = attempt + 1;
        let run = random_greedy_embed(&setup, derive_seed(seed, "pipeline-embed", attempt as u64));
        diag.conditions_held
            .push(conditions_hold(&setup, &run, condition_exponent));
        let map: Vec<Vertex> = (0..h.n()).map(|x| to_g[run.psi[x]]).collect();
        let embedding = Embedding {
            map,
            part_respecting: true,
        };
        if embedding.verify(h, g) {
            return Ok(Ok(PipelineSuccess {
                embedding,
                run,
                diagnostics: diag,
            }));
        }
    }
    let held = diag.conditions_held.iter().filter(|&&b| b).count();
    fail(
        "embed",
        format!("no verified embedding in {retries} runs ({held} met the defect budget)"),
        diag,
    )
}

impl PipelineDiagnostics {
    pub fn eta(&self) -> f64 {
        self.log_eta.exp()
    }

    pub fn theta_f64(&self) -> f64 {
        self.theta.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_kpartite;

    #[test]
    fn single_edge_in_complete_host() {
        let g = complete_kpartite(&[8, 8, 8]).unwrap();
        let h = complete_kpartite(&[1, 1, 1]).unwrap();
        let out = linear_turan_pipeline(&g, &h, &PipelineOverrides::default(), 1)
            .unwrap()
            .unwrap();
        assert!(out.embedding.verify(&h, &g));
    }

    #[test]
    fn paper_constants_are_subasymptotic() {
        let g = complete_kpartite(&[8, 8]).unwrap();
        let h = complete_kpartite(&[2, 2]).unwrap();
        let o = PipelineOverrides {
            paper_constants: true,
            ..Default::default()
        };
        let f = linear_turan_pipeline(&g, &h, &o, 0).unwrap().unwrap_err();
        assert_eq!(
            (f.stage, f.diagnostics.regime),
            ("parameters", "subasymptotic")
        );
        assert!(asymptotic_log_eta(1.0, 2, 2) < 0.0);
    }

    #[test]
    fn c4_in_dense_bipartite_host() {
        use rand::Rng as _;
        // at density 0.9 the (t+1)^k = 25 product constraint still leaves
        // thousands of edges; at 0.7 the pruned host is empty in expectation
        let mut rng = crate::rng::rng_from_seed(99);
        let g = complete_kpartite(&[64, 64])
            .unwrap()
            .filter_edges(|_| rng.gen_bool(0.9));
        let h = complete_kpartite(&[2, 2]).unwrap();
        let o = PipelineOverrides {
            theta: Some(crate::defect::ratio(8, 1)),
            t: Some(4),
            ..Default::default()
        };
        let ok = (0..9)
            .filter(|&s| match linear_turan_pipeline(&g, &h, &o, s).unwrap() {
                Ok(x) => x.embedding.verify(&h, &g),
                Err(_) => false,
            })
            .count();
        assert!(ok >= 5, "{ok} of 9 seeds embedded");
    }
}
