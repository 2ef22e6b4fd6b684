use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use netlsd::{
    build_laplacian, compute_signature, connected_components, extreme_eigenvalues, full_spectrum, heat_trace,
    EigenOptions, Kernel, Normalization, SignatureCollection, SpectrumOptions, Strategy, TimeGrid,
};
use netlsd_bench::{er, signatures};

fn dense(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_spectrum");
    for n in [100, 500, 1000] {
        let lap = build_laplacian(&er(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &lap, |b, lap| {
            b.iter(|| full_spectrum(black_box(lap), n).unwrap())
        });
    }
    group.finish();
}

fn iterative(c: &mut Criterion) {
    let mut group = c.benchmark_group("extreme_eigenvalues_k300");
    group.sample_size(10);
    for n in [2000, 5000] {
        let g = er(n);
        let lap = build_laplacian(&g);
        let components = connected_components(&g).count;
        let opts = EigenOptions::default();
        group.bench_with_input(BenchmarkId::from_parameter(n), &lap, |b, lap| {
            b.iter(|| extreme_eigenvalues(black_box(lap), 150, 150, components, &opts).unwrap())
        });
    }
    group.finish();
}

fn traces(c: &mut Criterion) {
    let spectrum = full_spectrum(&build_laplacian(&er(1000)), 1000).unwrap();
    let grid = TimeGrid::heat_default();
    c.bench_function("heat_trace_grid_n1000", |b| {
        b.iter(|| grid.values().iter().map(|&t| heat_trace(black_box(&spectrum), t)).sum::<f64>())
    });
}

fn embedding(c: &mut Criterion) {
    let g = er(300);
    let grid = TimeGrid::heat_default();
    let opts = SpectrumOptions::default();
    let mut group = c.benchmark_group("compute_signature_n300");
    for (name, strategy) in [("full", Strategy::Full), ("taylor", Strategy::Taylor)] {
        group.bench_function(name, |b| {
            b.iter(|| compute_signature(black_box(&g), Kernel::Heat, &grid, Normalization::Empty, strategy, &opts).unwrap())
        });
    }
    group.finish();
}

fn knn(c: &mut Criterion) {
    let sigs = signatures(2000, 40);
    let mut coll = SignatureCollection::new(sigs[0].1.meta);
    for (id, s) in &sigs {
        coll.insert(id.clone(), s.clone(), None).unwrap();
    }
    let query = sigs[7].1.clone();
    c.bench_function("knn_query_2000x250_k10", |b| b.iter(|| coll.knn_query(black_box(&query), 10).unwrap()));
}

criterion_group!(benches, dense, iterative, traces, embedding, knn);
criterion_main!(benches);
