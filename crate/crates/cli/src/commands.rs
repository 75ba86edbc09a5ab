use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use skeletal::config::RunConfig;
use skeletal::degeneracy::{d_max, skeletal_degeneracy};
use skeletal::drc::{prune_pipeline, simultaneous_prune, PipelineParams};
use skeletal::generators::{
    augment_with_anchors, bipartite_hedgehog, complete_kpartite, erdos_renyi,
    latin_square_hypergraph, LatinSquare,
};
use skeletal::greedy::{linear_turan_pipeline, PipelineOverrides};
use skeletal::io::{coloring_from_str, hypergraph_from_str, validate_file};
use skeletal::oracle::{brute_force_ramsey, brute_force_turan};
use skeletal::ramsey::{ramsey_experiment, RamseyExperimentParams, Strategy, Sweep};
use skeletal::turan::{
    deletion_construction_complete_with_budget, deletion_construction_skeletal_with, SkeletalParams,
};
use skeletal::{EdgeColoring, Error, Hypergraph};

use crate::artifact::Outcome;
use crate::Command;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Complete,
    Hedgehog,
    ErdosRenyi,
    Latin,
    Anchors,
}

#[derive(Args, Debug, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Part sizes for `complete`, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    /// A uniformly random Latin square instead of the cyclic one.
    #[arg(long)]
    random: bool,
    /// Input for `anchors`.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DegeneracyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Skeleton level; every level from 1 to k-1 when omitted.
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PruneMode {
    Pipeline,
    Simultaneous,
}

#[derive(Args, Debug, Serialize)]
pub struct PruneArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = PruneMode::Pipeline)]
    mode: PruneMode,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Extension threshold; defaults to the ceiling of the cube root of the part size.
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    epsilon0: Option<f64>,
    #[arg(long, default_value_t = 2)]
    lambda: usize,
    /// Tuple length for `simultaneous`.
    #[arg(long, default_value_t = 1)]
    t: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EmbedArgs {
    /// Host hypergraph G.
    #[arg(long)]
    host: PathBuf,
    /// Pattern hypergraph H.
    #[arg(long)]
    pattern: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pipeline: PipelineFlags,
}

/// Overrides for the embedding pipeline, shared by `embed` and `ramsey`.
#[derive(Args, Debug, Serialize)]
pub struct PipelineFlags {
    /// Scale parameter; theta defaults to eta^3 n.
    #[arg(long)]
    eta: Option<f64>,
    /// Exact rational such as `8` or `3/2`.
    #[arg(long)]
    theta: Option<String>,
    /// Defect exponent.
    #[arg(long)]
    t: Option<u32>,
    /// Forward tuple length; defaults to 4d.
    #[arg(long)]
    tuple_len: Option<usize>,
    /// Exponent of the embedding condition.
    #[arg(long)]
    s: Option<u32>,
    /// Host partition tolerance, as a rational.
    #[arg(long)]
    epsilon: Option<String>,
    /// Secondary host partition tolerance, as a rational.
    #[arg(long)]
    epsilon_prime: Option<String>,
}

impl PipelineFlags {
    fn overrides(&self, cfg: &RunConfig) -> anyhow::Result<PipelineOverrides> {
        Ok(PipelineOverrides {
            eta: self.eta,
            theta: rational(&self.theta, "theta")?,
            t: self.t,
            tuple_len: self.tuple_len,
            condition_exponent: self.s,
            retries: Some(cfg.retries),
            epsilon: rational(&self.epsilon, "epsilon")?,
            epsilon_prime: rational(&self.epsilon_prime, "epsilon-prime")?,
            paper_constants: cfg.paper_constants,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TuranFamily {
    Complete,
    Skeletal,
}

#[derive(Args, Debug, Serialize)]
pub struct TuranArgs {
    #[arg(long, value_enum, default_value_t = TuranFamily::Complete)]
    family: TuranFamily,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Pattern for `skeletal`.
    #[arg(long)]
    pattern: Option<PathBuf>,
    #[arg(long)]
    i: Option<usize>,
    /// Include the constructed hypergraph in the artifact.
    #[arg(long)]
    emit_graph: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct BruteExArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct BruteRamseyArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long = "n-max")]
    n_max: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Oracle,
    Pipeline,
}

#[derive(Args, Debug, Serialize)]
pub struct RamseyArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Oracle)]
    strategy: StrategyArg,
    /// Sweep every coloring instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long)]
    ell: Option<usize>,
    /// A single coloring file to test instead of a sweep.
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Pipeline overrides, used by `--strategy pipeline`.
    #[command(flatten)]
    #[serde(flatten)]
    pipeline: PipelineFlags,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    path: PathBuf,
}

fn echo(args: &impl Serialize) -> Value {
    serde_json::to_value(args).expect("flag structs serialize")
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A hypergraph document, or an artifact of `gen` holding one.
pub fn load_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    let text = read_text(path)?;
    let doc: Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let inner = doc.pointer("/result/hypergraph").cloned().unwrap_or(doc);
    hypergraph_from_str(&inner.to_string()).with_context(|| format!("in {}", path.display()))
}

fn load_coloring(path: &Path) -> anyhow::Result<EdgeColoring> {
    coloring_from_str(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

fn rational(s: &Option<String>, flag: &str) -> anyhow::Result<Option<BigRational>> {
    s.as_deref()
        .map(|x| {
            x.trim()
                .parse::<BigRational>()
                .map_err(|e| anyhow::anyhow!("--{flag} {x}: {e}"))
        })
        .transpose()
}

fn need<T: Copy>(x: Option<T>, flag: &str) -> anyhow::Result<T> {
    x.ok_or_else(|| anyhow::anyhow!("--{flag} is required here"))
}

fn budget_failure(args: Value, e: Error) -> anyhow::Result<Outcome> {
    match e {
        Error::BudgetExceeded { .. } => Outcome::failed(args, json!({ "error": e.to_string() })),
        e => Err(e.into()),
    }
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Gen(a) => gen(a, cfg),
        Command::Degeneracy(a) => degeneracy(a),
        Command::Prune(a) => prune(a, cfg),
        Command::Embed(a) => embed(a, cfg),
        Command::TuranLb(a) => turan(a, cfg),
        Command::BruteEx(a) => brute_ex(a, cfg),
        Command::BruteRamsey(a) => brute_ramsey(a, cfg),
        Command::Ramsey(a) => ramsey(a, cfg),
        Command::Validate(a) => validate(a),
    }
}

fn gen(a: &GenArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let h = match a.family {
        Family::Complete => {
            if a.sizes.is_empty() {
                bail!("--sizes is required for the complete family");
            }
            complete_kpartite(&a.sizes)?
        }
        Family::Hedgehog => bipartite_hedgehog(need(a.k, "k")?, need(a.d, "d")?)?,
        Family::ErdosRenyi => {
            erdos_renyi(need(a.k, "k")?, need(a.n, "n")?, need(a.p, "p")?, cfg.seed)?
        }
        Family::Latin => {
            let d = need(a.d, "d")?;
            let l = if a.random {
                LatinSquare::random(d, cfg.seed)
            } else {
                LatinSquare::cyclic(d)
            };
            latin_square_hypergraph(&l)
        }
        Family::Anchors => {
            let path = a
                .input
                .as_deref()
                .ok_or_else(|| anyhow::anyhow!("--in is required for anchors"))?;
            augment_with_anchors(&load_hypergraph(path)?)?
        }
    };
    Outcome::ok(
        echo(a),
        json!({ "n": h.n(), "k": h.k(), "edges": h.num_edges(), "hypergraph": h }),
    )
}

fn degeneracy(a: &DegeneracyArgs) -> anyhow::Result<Outcome> {
    let h = load_hypergraph(&a.input)?;
    let levels: Vec<usize> = match a.i {
        Some(i) => vec![i],
        None => (1..h.k()).collect(),
    };
    let mut certs = Vec::new();
    for &i in &levels {
        let c = skeletal_degeneracy(&h, i)?;
        let skel = skeletal::skeleton(&h, i)?;
        certs.push(json!({ "i": i, "d": c.value, "verified": c.verify(&skel), "certificate": c }));
    }
    let d = certs.first().map(|c| c["d"].clone()).unwrap_or(Value::Null);
    Outcome::ok(
        echo(a),
        json!({ "d": d, "d_max": d_max(&h), "levels": certs }),
    )
}

fn prune(a: &PruneArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let g = load_hypergraph(&a.input)?;
    match a.mode {
        PruneMode::Pipeline => {
            let params = PipelineParams {
                epsilon0: a.epsilon0,
                lambda: a.lambda,
                h: a.h,
                retries: cfg.retries,
                cap: cfg.caps.enumeration,
                ..PipelineParams::new(a.d)
            };
            match prune_pipeline(&g, &params, cfg.seed) {
                Ok(Ok(trace)) => {
                    let mut v = serde_json::to_value(&trace)?;
                    v["product_in_survivor"] = json!(trace.product_in_survivor());
                    v["survivor"] = serde_json::to_value(&trace.survivor)?;
                    Outcome::ok(echo(a), v)
                }
                Ok(Err(fail)) => Outcome::failed(echo(a), fail),
                Err(e) => budget_failure(echo(a), e),
            }
        }
        PruneMode::Simultaneous => {
            let r = simultaneous_prune(&g, a.t, cfg.seed)?;
            Outcome::ok(
                echo(a),
                json!({
                    "edges_before": g.num_edges(),
                    "edges_after": r.pruned.num_edges(),
                    "tuples": r.tuples,
                    "original_ids": r.original_ids,
                    "pruned": r.pruned,
                }),
            )
        }
    }
}

fn embed(a: &EmbedArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let g = load_hypergraph(&a.host)?;
    let h = load_hypergraph(&a.pattern)?;
    let overrides = a.pipeline.overrides(cfg)?;
    match linear_turan_pipeline(&g, &h, &overrides, cfg.seed) {
        Ok(Ok(s)) => Outcome::ok(echo(a), s),
        Ok(Err(f)) => Outcome::failed(echo(a), f),
        Err(e) => budget_failure(echo(a), e),
    }
}

fn turan(a: &TuranArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match a.family {
        TuranFamily::Complete => {
            let k = need(a.k, "k")?;
            let (g, report) = match deletion_construction_complete_with_budget(
                k,
                a.d,
                a.n,
                cfg.seed,
                cfg.caps.removals,
            ) {
                Ok(x) => x,
                Err(e) => return budget_failure(echo(a), e),
            };
            let mut v = json!({ "report": report });
            if a.emit_graph {
                v["hypergraph"] = serde_json::to_value(&g)?;
            }
            Outcome::ok(echo(a), v)
        }
        TuranFamily::Skeletal => {
            let path = a
                .pattern
                .as_deref()
                .ok_or_else(|| anyhow::anyhow!("--pattern is required for skeletal"))?;
            let h = load_hypergraph(path)?;
            let params = SkeletalParams {
                retries: cfg.retries,
                removal_budget: cfg.caps.removals,
            };
            let c = match deletion_construction_skeletal_with(
                &h,
                need(a.i, "i")?,
                a.d,
                a.n,
                cfg.seed,
                &params,
            ) {
                Ok(c) => c,
                Err(e) => return budget_failure(echo(a), e),
            };
            let mut v = json!({
                "report": c.report,
                "core_vertices": c.core.n(),
                "core_edges": c.core.num_edges(),
                "intermediate_edges": c.intermediate.num_edges(),
                "intermediate_ffree": c.intermediate_ffree,
            });
            if a.emit_graph {
                v["hypergraph"] = serde_json::to_value(&c.output)?;
                v["intermediate"] = serde_json::to_value(&c.intermediate)?;
            }
            Outcome::ok(echo(a), v)
        }
    }
}

fn brute_ex(a: &BruteExArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let h = load_hypergraph(&a.pattern)?;
    match brute_force_turan(a.n, &h, cfg.caps.search_nodes) {
        Ok(r) => Outcome::ok(echo(a), r),
        Err(e) => budget_failure(echo(a), e),
    }
}

fn brute_ramsey(a: &BruteRamseyArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let h = load_hypergraph(&a.pattern)?;
    match brute_force_ramsey(&h, a.q, a.n_max, cfg.caps.search_nodes) {
        Ok(r) => Outcome::ok(echo(a), r),
        Err(e) => budget_failure(echo(a), e),
    }
}

fn ramsey(a: &RamseyArgs, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let h = load_hypergraph(&a.pattern)?;
    if let Some(path) = &a.coloring {
        let f = load_coloring(path)?;
        let found = skeletal::oracle::find_monochromatic_copy(&f, &h)?;
        let verified = found.as_ref().map(|(c, emb)| emb.verify(&h, &f.class(*c)));
        return Outcome::ok(
            echo(a),
            json!({ "found": found.is_some(), "verified": verified, "copy": found }),
        );
    }
    let strategy = match a.strategy {
        StrategyArg::Oracle => Strategy::Oracle,
        StrategyArg::Pipeline => Strategy::Pipeline,
    };
    let sweep = if a.exhaustive {
        Sweep::Exhaustive
    } else {
        Sweep::Random { samples: a.samples }
    };
    let params = RamseyExperimentParams {
        ell: a.ell,
        overrides: a.pipeline.overrides(cfg)?,
    };
    match ramsey_experiment(&h, a.q, a.n, strategy, sweep, &params, cfg.seed) {
        Ok(r) => Outcome::ok(echo(a), r),
        Err(e) => budget_failure(echo(a), e),
    }
}

fn validate(a: &ValidateArgs) -> anyhow::Result<Outcome> {
    let (kind, diagnostics) = validate_file(&a.path);
    let result = json!({
        "kind": kind,
        "valid": diagnostics.is_empty(),
        "first_error": diagnostics.first().map(ToString::to_string),
        "diagnostics": diagnostics,
    });
    if diagnostics.is_empty() {
        Outcome::ok(echo(a), result)
    } else {
        Outcome::failed(echo(a), result)
    }
}
