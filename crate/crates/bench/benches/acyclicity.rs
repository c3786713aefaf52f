use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use skewcycle::{acyclicity_test, decompose, decompose_strong};
use skewcycle_bench::{composed, random, SIZES};

fn check(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    for n in SIZES {
        let g = composed(n, 1);
        group.throughput(Throughput::Elements(
            (g.node_count() + g.arc_count()) as u64,
        ));
        group.bench_with_input(BenchmarkId::new("weakly-acyclic", n), &g, |b, g| {
            b.iter(|| acyclicity_test(g).unwrap().is_weakly_acyclic())
        });
        let r = random(n, 1);
        group.throughput(Throughput::Elements(
            (r.node_count() + r.arc_count()) as u64,
        ));
        group.bench_with_input(BenchmarkId::new("random", n), &r, |b, g| {
            b.iter(|| acyclicity_test(g).unwrap().is_weakly_acyclic())
        });
    }
    group.finish();
}

fn decompositions(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    group.sample_size(20);
    for n in SIZES {
        let g = composed(n, 2);
        group.throughput(Throughput::Elements(
            (g.node_count() + g.arc_count()) as u64,
        ));
        group.bench_with_input(BenchmarkId::new("weak", n), &g, |b, g| {
            b.iter(|| decompose(g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("strong", n), &g, |b, g| {
            b.iter(|| decompose_strong(g).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, check, decompositions);
criterion_main!(benches);
