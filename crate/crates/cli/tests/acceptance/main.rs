//! The acceptance suite: one check per criterion, each printing a single
//! PASS or FAIL line. Exits nonzero if any criterion fails.

mod oracles;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skeletal::defect::{
    average_defect, defect_lower_bound_check, omega_theta, ratio, set_defect, Defect,
};
use skeletal::degeneracy::{d1, edge_count_bound_check, skeletal_degeneracy};
use skeletal::drc::{drc_round, prune_pipeline, simultaneous_prune, PipelineParams};
use skeletal::generators::{bipartite_hedgehog, complete_kpartite, erdos_renyi};
use skeletal::greedy::{
    build_setup, check_embedding_conditions, h_partition, random_greedy_embed, Case, HPartition,
};
use skeletal::io::hypergraph_to_json;
use skeletal::oracle::{brute_force_ramsey, brute_force_turan, find_embedding};
use skeletal::ramsey::{kr_reduce, ramsey_experiment, RamseyExperimentParams, Strategy, Sweep};
use skeletal::turan::{deletion_construction_complete, deletion_construction_skeletal};
use skeletal::{EdgeColoring, Hypergraph, PartiteLayout};

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: skeletal::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_partite(sizes: &[usize], p: f64, seed: u64) -> Hypergraph {
    let mut r = rng(seed);
    complete_kpartite(sizes)
        .unwrap()
        .filter_edges(|_| r.gen_bool(p))
}

fn part_of(h: &Hypergraph) -> Vec<usize> {
    let l = h.layout().expect("layout");
    (0..h.n()).map(|v| l.part_of(v)).collect()
}

fn c1_closed_form_degeneracies() -> Check {
    let mut slowest = Duration::ZERO;
    let mut cases = 0;
    for k in 2..=4 {
        for d in 1..=4 {
            let start = Instant::now();
            let h = complete_kpartite(&vec![d; k]).unwrap();
            let cert = lib(skeletal_degeneracy(&h, 1))?;
            slowest = slowest.max(start.elapsed());
            let naive = oracles::skeletal_degeneracy(h.n(), h.edges(), 1);
            ensure(cert.value == (k - 1) * d && naive == cert.value, || {
                format!(
                    "d_1(K^({k})_{d}) = {} (oracle {naive}), expected {}",
                    cert.value,
                    (k - 1) * d
                )
            })?;
            cases += 1;
        }
    }
    for k in 3..=4 {
        for d in k..=5 {
            let start = Instant::now();
            let h = bipartite_hedgehog(k, d).unwrap();
            let top = lib(skeletal_degeneracy(&h, k - 1))?.value;
            let low = lib(skeletal_degeneracy(&h, 1))?.value;
            slowest = slowest.max(start.elapsed());
            ensure(top == 1 && low == d, || {
                format!("hedgehog k={k} d={d}: d_(k-1) = {top}, d_1 = {low}")
            })?;
            ensure(
                oracles::skeletal_degeneracy(h.n(), h.edges(), 1) == d,
                || format!("oracle disagrees on hedgehog k={k} d={d}"),
            )?;
            cases += 1;
        }
    }
    ensure(slowest < Duration::from_secs(1), || {
        format!("slowest case took {slowest:?}")
    })?;
    Ok(format!("{cases} closed forms exact, slowest {slowest:.1?}"))
}

fn c2_edge_bound() -> Check {
    let mut r = rng(2);
    let mut violations = 0;
    for s in 0..1000u64 {
        let k = 2 + (s % 3) as usize;
        let n = r.gen_range(k..=20);
        let p: f64 = r.gen_range(0.02..0.9);
        let h = lib(erdos_renyi(k, n, p, s))?;
        let d = oracles::skeletal_degeneracy(n, h.edges(), 1);
        let holds = (h.num_edges() as u128) <= (d as u128).pow(k as u32 - 1) * n as u128;
        if !holds || holds != edge_count_bound_check(&h) || d != d1(&h) {
            violations += 1;
        }
    }
    ensure(violations == 0, || {
        format!("{violations} of 1000 violate or disagree")
    })?;
    Ok("1000 random hypergraphs, zero violations".into())
}

fn c3_defect_laws() -> Check {
    let th = ratio(3, 1);
    let table = [
        (0, Defect::Infinite),
        (1, Defect::Finite(ratio(3, 1))),
        (2, Defect::Finite(ratio(3, 2))),
        (3, Defect::zero()),
        (7, Defect::zero()),
    ];
    for (x, want) in table {
        ensure(lib(omega_theta(x, &th))? == want, || {
            format!("omega_3({x}) wrong")
        })?;
    }
    ensure(
        lib(omega_theta(2, &ratio(5, 2)))? == Defect::Finite(ratio(5, 4)),
        || "omega_5/2(2) wrong".into(),
    )?;
    for c in 1..5 {
        for x in 0..12 {
            let scaled = lib(omega_theta(c * x, &(ratio(7, 2) * ratio(c as i64, 1))))?;
            ensure(scaled == lib(omega_theta(x, &ratio(7, 2)))?, || {
                format!("scaling fails at c={c} x={x}")
            })?;
        }
    }
    let mut r = rng(3);
    for s in 0..500u64 {
        let g = random_partite(&[4, 4, 4], r.gen_range(0.3..0.95), s);
        let i = r.gen_range(0..3);
        let outside: Vec<usize> = (0..12).filter(|v| v / 4 != i).collect();
        let big: Vec<usize> = outside
            .iter()
            .copied()
            .filter(|_| r.gen_bool(0.4))
            .collect();
        let small: Vec<usize> = big.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
        let theta = ratio(r.gen_range(1..9), r.gen_range(1..4));
        let (a, b) = (
            lib(set_defect(&g, &small, i, &theta))?,
            lib(set_defect(&g, &big, i, &theta))?,
        );
        ensure(a <= b, || {
            format!("monotonicity fails on instance {s}: {a} > {b}")
        })?;
    }
    let mut checked = 0;
    for s in 0..200u64 {
        let g = random_partite(&[5, 5, 5], r.gen_range(0.3..0.95), 1000 + s);
        let i = r.gen_range(0..3);
        let outside: Vec<usize> = (0..15).filter(|v| v / 5 != i).collect();
        let d = r.gen_range(1..=3);
        let qs: Vec<Vec<usize>> = (0..r.gen_range(1..12))
            .map(|_| {
                (0..d)
                    .map(|_| outside[r.gen_range(0..outside.len())])
                    .collect()
            })
            .collect();
        let theta = ratio(r.gen_range(1..12), r.gen_range(1..4));
        let t = r.gen_range(1..=4);
        lib(average_defect(&g, &qs, i, &theta, t))?;
        ensure(
            lib(defect_lower_bound_check(&g, &qs, i, &theta, t))?,
            || format!("lower bound fails on instance {s}"),
        )?;
        checked += 1;
    }
    Ok(format!(
        "piecewise values exact, 500 monotone, {checked} lower bounds hold"
    ))
}

fn c4_drc_replay() -> Check {
    let mut r = rng(4);
    let mut mismatches = 0;
    for s in 0..500u64 {
        let k = 2 + (s % 2) as usize;
        let m = if k == 2 {
            r.gen_range(1..=4)
        } else {
            r.gen_range(1..=2)
        };
        let g = random_partite(&vec![m; k], r.gen_range(0.4..1.0), s);
        let po = part_of(&g);
        if g.n() > 8 {
            return Err(format!("host {s} has {} vertices", g.n()));
        }
        if s % 2 == 0 {
            let t = r.gen_range(0..k);
            let u = r.gen_range(1..=4);
            let (out, xs) = lib(drc_round(&g, t, u, s))?;
            let want = oracles::drc_survivors(g.edges(), &po, t, &xs);
            if want != out.edges().iter().cloned().collect() {
                mismatches += 1;
            }
        } else {
            let t = r.gen_range(1..=3);
            let out = lib(simultaneous_prune(&g, t, s))?;
            let want = oracles::product_survivors(g.edges(), &po, &out.tuples);
            let relabeled: std::collections::BTreeSet<Vec<usize>> = out
                .pruned
                .edges()
                .iter()
                .map(|e| e.iter().map(|&v| out.original_ids[v]).sorted().collect())
                .collect();
            if want != out.kept.edges().iter().cloned().collect() || want != relabeled {
                mismatches += 1;
            }
        }
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} of 500 survivor sets differ")
    })?;
    Ok("500 runs, zero mismatches".into())
}

fn c5_drc_expectation() -> Check {
    let n = 24usize;
    let g = random_partite(&[n, n], 0.5, 5);
    let p = g.num_edges() as f64 / (n * n) as f64;
    let bound = p.powi(4) * (n * n) as f64;
    let samples: Vec<f64> = (0..500u64)
        .map(|s| simultaneous_prune(&g, 1, 50_000 + s).map(|r| r.kept.num_edges() as f64))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mean = samples.iter().sum::<f64>() / 500.0;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 499.0;
    let se = (var / 500.0).sqrt();
    ensure(mean >= bound - 3.0 * se, || {
        format!("mean {mean:.2} below bound {bound:.2} - 3·{se:.2}")
    })?;
    Ok(format!(
        "mean {mean:.2} ≥ p^4 n^2 = {bound:.2} (se {se:.2})"
    ))
}

fn c6_pipeline_structure() -> Check {
    let mut successes = 0;
    let mut attempts = 0;
    let mut r = rng(6);
    while successes < 100 && attempts < 2000 {
        attempts += 1;
        let k = 2 + (attempts % 2);
        let m = r.gen_range(6..=12);
        let p = if attempts % 3 == 0 {
            1.0
        } else {
            r.gen_range(0.9..1.0)
        };
        let g = random_partite(&vec![m; k], p, attempts as u64);
        let d = 1 + (attempts % 2);
        let params = PipelineParams {
            retries: 4,
            ..PipelineParams::new(d)
        };
        let Ok(trace) = lib(prune_pipeline(&g, &params, attempts as u64))? else {
            continue;
        };
        successes += 1;
        let survivor = &trace.survivor;
        let po = part_of(survivor);
        let tuples: Vec<Vec<usize>> = trace.tuples().iter().map(|t| t.to_vec()).collect();
        let set = oracles::edge_set(survivor.edges());
        let product_ok = tuples
            .iter()
            .map(|t| t.iter().copied())
            .multi_cartesian_product()
            .all(|e| set.contains(&e.into_iter().sorted().collect::<Vec<_>>()));
        ensure(product_ok && trace.product_in_survivor(), || {
            format!("run {attempts}: product not in survivor")
        })?;
        for part in 0..k {
            ensure(
                oracles::is_vertex_extending(survivor.edges(), &po, part, trace.h, d),
                || {
                    format!(
                        "run {attempts}: not ({}, {d})-vertex-extending to part {part}",
                        trace.h
                    )
                },
            )?;
        }
    }
    ensure(successes == 100, || {
        format!("only {successes} successful runs in {attempts} attempts")
    })?;
    Ok(format!(
        "100 successful runs ({attempts} hosts tried), product and extension verified"
    ))
}

fn c7_embedding_soundness() -> Check {
    let mut r = rng(7);
    let (mut certified, mut runs) = (0, 0u64);
    while certified < 500 && runs < 20_000 {
        runs += 1;
        let kk = r.gen_range(2..=4);
        let pattern_sizes: Vec<usize> = (0..kk).map(|_| r.gen_range(1..=3)).collect();
        let h = random_partite(&pattern_sizes, 0.5, runs);
        if h.is_empty() {
            continue;
        }
        let m = r.gen_range(8..=14);
        let p = if runs % 2 == 0 {
            1.0
        } else {
            r.gen_range(0.85..1.0)
        };
        let g = random_partite(&vec![m; kk], p, 7_000_000 + runs);
        if (0..g.n()).any(|v| g.is_isolated(v)) {
            continue;
        }
        let Some(gl) = g.layout() else { continue };
        if (0..kk).any(|i| gl.part(i).len() < pattern_sizes[i]) {
            continue;
        }
        let thetas: Vec<_> = (0..kk - 1)
            .map(|i| ratio(2 * pattern_sizes[i] as i64, 1))
            .collect();
        let skel_d = (1..=8)
            .find(|&d| build_setup(&g, &h, &(0..kk).collect::<Vec<_>>(), &thetas, d).is_ok());
        let Some(d) = skel_d else { continue };
        let setup = lib(build_setup(
            &g,
            &h,
            &(0..kk).collect::<Vec<_>>(),
            &thetas,
            d,
        ))?;
        let run = random_greedy_embed(&setup, runs);
        if !lib(check_embedding_conditions(&setup, &run, 2 * d as u32))? {
            continue;
        }
        certified += 1;
        let hl = h.layout().unwrap();
        let psi_ok = oracles::is_embedding(h.edges(), g.edges(), &run.psi)
            && (0..h.n()).all(|x| gl.part_of(run.psi[x]) == hl.part_of(x));
        let fresh = (0..h.n()).all(|x| {
            if hl.part_of(x) + 1 == kk {
                run.case_log[x] == Case::Last
            } else {
                run.case_log[x] == Case::Fresh
            }
        });
        ensure(psi_ok && fresh, || {
            format!("run {runs}: certified run is not a fresh-only embedding")
        })?;
    }
    ensure(certified == 500, || {
        format!("only {certified} certified runs in {runs}")
    })?;
    Ok(format!(
        "500 certified runs ({runs} total), all embeddings with only case 3(c)"
    ))
}

fn c8_deletion_freeness() -> Check {
    for s in 0..100u64 {
        let n = 16 + (s % 17) as usize;
        let (g, report) = lib(deletion_construction_complete(2, 2, n, s))?;
        ensure(!oracles::has_c4(g.n(), g.edges()), || {
            format!("complete run {s}: output contains C_4")
        })?;
        ensure(report.z_bounds_survivors(), || {
            format!("complete run {s}: Z exceeds survivors")
        })?;
    }
    let h = complete_kpartite(&[2, 2, 2]).unwrap();
    for s in 0..50u64 {
        let n = 12 + (s % 13) as usize;
        let c = lib(deletion_construction_skeletal(&h, 1, 4, n, s))?;
        ensure(
            !oracles::has_octahedron(c.intermediate.n(), c.intermediate.edges()),
            || format!("skeletal run {s}: intermediate contains the octahedron"),
        )?;
        ensure(c.intermediate_ffree, || {
            format!("skeletal run {s}: library reports an F copy")
        })?;
        ensure(lib(find_embedding(&h, &c.output, false))?.is_none(), || {
            format!("skeletal run {s}: output contains H")
        })?;
    }
    Ok("100 complete outputs C_4-free, 50 skeletal intermediates F-free and outputs H-free".into())
}

fn is_balanced_complete_bipartite(g: &Hypergraph) -> bool {
    let n = g.n();
    (0..n).combinations(n / 2).any(|side| {
        let inside = |v: usize| side.contains(&v);
        g.num_edges() == (n / 2) * (n - n / 2)
            && g.edges().iter().all(|e| inside(e[0]) != inside(e[1]))
    })
}

fn is_five_cycle(g: &Hypergraph) -> bool {
    if g.n() != 5 || g.num_edges() != 5 || (0..5).any(|v| g.degree(v) != 2) {
        return false;
    }
    // 2-regular on 5 vertices is a single cycle unless it splits, which needs a triangle
    !(0..5)
        .tuple_combinations()
        .any(|(a, b, c)| [[a, b], [a, c], [b, c]].iter().all(|e| g.contains_edge(e)))
}

fn c9_small_extremal_values() -> Check {
    let k3 = Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
    for n in 3..=6 {
        let r = lib(brute_force_turan(n, &k3, None))?;
        let want = n * n / 4;
        ensure(r.exhaustive && r.value == want, || {
            format!("ex({n}, K_3) = {}, expected {want}", r.value)
        })?;
        ensure(oracles::ex_triangle_exhaustive(n) == want, || {
            format!("oracle ex({n}, K_3) differs")
        })?;
        ensure(is_balanced_complete_bipartite(&r.witness), || {
            format!("ex({n}, K_3) witness is not K_(n/2, n/2)")
        })?;
    }
    let c4 = Hypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let ex4 = lib(brute_force_turan(4, &c4, None))?;
    ensure(
        ex4.value == 4 && !oracles::has_c4(4, ex4.witness.edges()),
        || format!("ex(4, C_4) = {}", ex4.value),
    )?;
    let rr = lib(brute_force_ramsey(&k3, 2, 6, None))?;
    ensure(rr.value == Some(6), || {
        format!("r(K_3; 2) = {:?}", rr.value)
    })?;
    let witness = rr.avoiding.ok_or("no avoiding coloring at N = 5")?;
    ensure(
        witness.num_vertices() == 5
            && is_five_cycle(&witness.class(0))
            && is_five_cycle(&witness.class(1)),
        || "N = 5 witness is not the pentagon coloring".into(),
    )?;
    ensure(
        oracles::triangle_free_colorings(5) > 0 && oracles::triangle_free_colorings(6) == 0,
        || "oracle sweep disagrees".into(),
    )?;
    let params = RamseyExperimentParams::default();
    let six = lib(ramsey_experiment(
        &k3,
        2,
        6,
        Strategy::Oracle,
        Sweep::Exhaustive,
        &params,
        0,
    ))?;
    let five = lib(ramsey_experiment(
        &k3,
        2,
        5,
        Strategy::Oracle,
        Sweep::Exhaustive,
        &params,
        0,
    ))?;
    ensure(six.successes == six.colorings && six.unsound == 0, || {
        "some 2-coloring of K_6 avoids K_3".into()
    })?;
    ensure(five.failing_witness.is_some(), || {
        "every 2-coloring of K_5 has a monochromatic K_3".into()
    })?;
    Ok(format!(
        "ex(n, K_3) = ⌊n²/4⌋ for n ≤ 6, ex(4, C_4) = 4, r(K_3; 2) = 6 ({} colorings swept)",
        six.colorings
    ))
}

fn c10_kr_soundness() -> Check {
    let c4 = Hypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
    let (mut found, mut reduced) = (0, 0);
    for s in 0..200u64 {
        let n = 12 + (s % 13) as usize;
        let f = lib(EdgeColoring::random(n, 2, 2, s))?;
        let ell = d1(&c4) + 1;
        let Ok(red) = lib(kr_reduce(&f, &c4, ell, s))? else {
            continue;
        };
        reduced += 1;
        let Some(emb) = lib(find_embedding(&red.lifted, &red.host, true))? else {
            continue;
        };
        found += 1;
        ensure(
            oracles::is_embedding(red.lifted.edges(), red.host.edges(), &emb.map),
            || format!("run {s}: bad lifted copy"),
        )?;
        let back = red.pullback(&c4, &emb);
        ensure(
            oracles::monochromatic_copy(n, 2, f.colors(), c4.edges(), &back.map, red.color),
            || format!("run {s}: pullback is not a monochromatic C_4"),
        )?;
        ensure(red.verify_pullback(&f, &c4, &emb), || {
            format!("run {s}: library replay rejects a sound pullback")
        })?;
    }
    ensure(found > 0, || "no lifted copy found in any run".into())?;
    Ok(format!(
        "200 runs, {reduced} reductions, {found} copies pulled back, zero unsound"
    ))
}

fn random_pattern(r: &mut ChaCha8Rng, seed: u64) -> Hypergraph {
    let k = r.gen_range(2..=3);
    let sizes: Vec<usize> = (0..k).map(|_| r.gen_range(1..=6)).collect();
    random_partite(&sizes, r.gen_range(0.1..0.9), seed)
}

fn c11_h_partition() -> Check {
    let mut r = rng(11);
    let mut disagreements = 0;
    let mut mutants = 0;
    for s in 0..500u64 {
        let h = random_pattern(&mut r, 11_000 + s);
        let d = d1(&h).max(1);
        let po = part_of(&h);
        match h_partition(&h, d) {
            Err(_) => disagreements += 1,
            Ok(hp) => {
                if !oracles::h_partition_holds(h.n(), h.edges(), &po, &hp.level_of, d) {
                    disagreements += 1;
                }
                // perturbed partitions: library checker against the oracle
                let mut level_of = hp.level_of.clone();
                let v = r.gen_range(0..h.n());
                level_of[v] = r.gen_range(0..hp.levels + 2);
                let levels = level_of.iter().max().unwrap() + 1;
                let mut blocks = vec![vec![Vec::new(); po.iter().max().unwrap() + 1]; levels];
                for x in 0..h.n() {
                    blocks[level_of[x]][po[x]].push(x);
                }
                let mutant = HPartition {
                    levels,
                    blocks,
                    level_of: level_of.clone(),
                };
                mutants += 1;
                let lib_ok = mutant.conclusion_failures(&h, d).is_empty();
                if lib_ok != oracles::h_partition_holds(h.n(), h.edges(), &po, &level_of, d) {
                    disagreements += 1;
                }
            }
        }
    }
    ensure(disagreements == 0, || {
        format!("{disagreements} disagreements")
    })?;
    Ok(format!(
        "500 patterns and {mutants} perturbed partitions, zero disagreements"
    ))
}

fn cli(args: &[&str], dir: &Path) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_skeletal"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn c12_determinism(suite_start: Instant) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, h: &Hypergraph| {
        std::fs::write(dir.path().join(name), hypergraph_to_json(h)).unwrap()
    };
    write("host.json", &random_partite(&[10, 10], 0.9, 12));
    write("host3.json", &random_partite(&[8, 8, 8], 0.95, 12));
    write("c4.json", &complete_kpartite(&[2, 2]).unwrap());
    write(
        "k3.json",
        &Hypergraph::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap(),
    );
    write(
        "edge.json",
        &complete_kpartite(&[1, 1])
            .unwrap()
            .without_layout()
            .with_layout(PartiteLayout::consecutive(&[1, 1]))
            .unwrap(),
    );
    let runs: &[&[&str]] = &[
        &[
            "gen",
            "--family",
            "erdos-renyi",
            "--k",
            "3",
            "--n",
            "12",
            "--p",
            "0.3",
            "--seed",
            "5",
        ],
        &[
            "gen", "--family", "latin", "--d", "4", "--random", "--seed", "5",
        ],
        &["degeneracy", "--in", "host3.json"],
        &["prune", "--in", "host3.json", "--d", "1", "--seed", "9"],
        &[
            "prune",
            "--in",
            "host.json",
            "--mode",
            "simultaneous",
            "--t",
            "2",
            "--seed",
            "9",
        ],
        &[
            "embed",
            "--host",
            "host.json",
            "--pattern",
            "c4.json",
            "--theta",
            "4",
            "--t",
            "1",
            "--seed",
            "3",
        ],
        &[
            "embed",
            "--host",
            "host.json",
            "--pattern",
            "c4.json",
            "--paper-constants",
            "--seed",
            "3",
        ],
        &[
            "turan-lb",
            "--k",
            "2",
            "--d",
            "2",
            "--n",
            "20",
            "--seed",
            "4",
            "--emit-graph",
        ],
        &["brute-ex", "--pattern", "k3.json", "--n", "5"],
        &["brute-ramsey", "--pattern", "k3.json", "--n-max", "6"],
        &[
            "ramsey",
            "--pattern",
            "c4.json",
            "--N",
            "10",
            "--samples",
            "4",
            "--seed",
            "8",
        ],
        &[
            "ramsey",
            "--pattern",
            "edge.json",
            "--N",
            "9",
            "--strategy",
            "pipeline",
            "--samples",
            "2",
            "--seed",
            "8",
        ],
        &["validate", "host.json"],
        &[
            "prune",
            "--in",
            "host.json",
            "--format",
            "csv",
            "--seed",
            "1",
        ],
    ];
    for args in runs {
        let (a, ca) = cli(args, dir.path())?;
        let (b, cb) = cli(args, dir.path())?;
        ensure(!a.is_empty() && a == b && ca == cb, || {
            format!(
                "`skeletal {}` is not byte-identical across runs",
                args.join(" ")
            )
        })?;
        ensure(ca == 0 || ca == 2, || {
            format!("`skeletal {}` exited {ca}", args.join(" "))
        })?;
    }
    let elapsed = suite_start.elapsed();
    ensure(elapsed < Duration::from_secs(15 * 60), || {
        format!("acceptance suite took {elapsed:?}")
    })?;
    Ok(format!(
        "{} subcommand runs byte-identical, suite so far {:.1?}",
        runs.len(),
        elapsed
    ))
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<Criterion> = vec![
        (
            "closed-form degeneracies",
            Box::new(c1_closed_form_degeneracies),
        ),
        ("edge-count bound", Box::new(c2_edge_bound)),
        ("defect laws", Box::new(c3_defect_laws)),
        ("DRC survival-rule exactness", Box::new(c4_drc_replay)),
        ("DRC expectation inequality", Box::new(c5_drc_expectation)),
        (
            "pipeline structural guarantee",
            Box::new(c6_pipeline_structure),
        ),
        ("embedding soundness", Box::new(c7_embedding_soundness)),
        (
            "deletion constructions are H-free",
            Box::new(c8_deletion_freeness),
        ),
        (
            "exact small extremal values",
            Box::new(c9_small_extremal_values),
        ),
        ("KR-reduction soundness", Box::new(c10_kr_soundness)),
        ("H-partition conclusions", Box::new(c11_h_partition)),
        (
            "determinism and runtime",
            Box::new(move || c12_determinism(start)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(check)).unwrap_or_else(|p| {
                Err(p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default())
            });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag}: {name}: {detail} [{:.1?}]",
            i + 1,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
