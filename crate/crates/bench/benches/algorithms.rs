use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::BigRational;
use skeletal::drc::{drc_round, simultaneous_prune};
use skeletal::generators::{bipartite_hedgehog, complete_kpartite, erdos_renyi};
use skeletal::greedy::{build_setup, random_greedy_embed};
use skeletal::turan::count_cliques;
use skeletal::{degeneracy, find_embedding, skeletal_degeneracy};
use skeletal_bench::{dense_partite, random_graph};

fn degeneracy_benches(c: &mut Criterion) {
    let h = erdos_renyi(3, 40, 0.05, 1).unwrap();
    c.bench_function("degeneracy/er3_n40", |b| b.iter(|| degeneracy(&h)));
    let hog = bipartite_hedgehog(3, 6).unwrap();
    c.bench_function("skeletal_degeneracy/hedgehog_k3_d6", |b| {
        b.iter(|| skeletal_degeneracy(&hog, 1).unwrap())
    });
}

fn drc_benches(c: &mut Criterion) {
    let g = dense_partite(3, 12, 0.8, 2);
    c.bench_function("drc_round/k3_m12", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            drc_round(&g, 0, 2, seed).unwrap()
        })
    });
    let g = dense_partite(2, 40, 0.9, 3);
    c.bench_function("simultaneous_prune/k2_m40_t2", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            simultaneous_prune(&g, 2, seed).unwrap()
        })
    });
}

fn embed_benches(c: &mut Criterion) {
    let g = complete_kpartite(&[16, 16]).unwrap();
    let h = complete_kpartite(&[2, 2]).unwrap();
    let theta = BigRational::from_integer(4.into());
    let setup = build_setup(&g, &h, &[0, 1], &[theta], 2).unwrap();
    c.bench_function("random_greedy_embed/c4_in_k16_16", |b| {
        b.iter(|| random_greedy_embed(&setup, 7))
    });
    let host = random_graph(18, 0.5, 4);
    let pattern = complete_kpartite(&[2, 3]).unwrap().without_layout();
    c.bench_function("find_embedding/k23_in_gnp18", |b| {
        b.iter(|| find_embedding(&pattern, &host, false).unwrap())
    });
}

fn clique_benches(c: &mut Criterion) {
    let g = random_graph(40, 0.5, 5);
    c.bench_function("count_cliques/k4_gnp40", |b| {
        b.iter(|| count_cliques(&g, 4))
    });
}

criterion_group!(
    benches,
    degeneracy_benches,
    drc_benches,
    embed_benches,
    clique_benches
);
criterion_main!(benches);
