use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use runrank::workload::QueryKind;
use runrank::{AnyIndex, RankSelect};
use runrank_bench::Fixture;

const QUERIES: usize = 10_000;

fn run(index: &AnyIndex, queries: &[runrank::Query]) -> i64 {
    queries.iter().map(|q| index.answer(q).unwrap()).sum()
}

fn bench_queries(c: &mut Criterion) {
    let fixture = Fixture::new(1_000_000, 100, 10_000, &[4, 16, 32]).unwrap();
    for kind in QueryKind::ALL {
        let queries = fixture.queries(kind, QUERIES);
        let mut group = c.benchmark_group(kind.name());
        group.throughput(Throughput::Elements(QUERIES as u64));
        for (tau, index) in &fixture.rlrs {
            group.bench_with_input(BenchmarkId::new("rlrs", tau), &queries, |b, q| {
                b.iter(|| run(index, black_box(q)))
            });
        }
        group.bench_with_input(BenchmarkId::new("bcgpr", 4), &queries, |b, q| {
            b.iter(|| run(&fixture.bcgpr, black_box(q)))
        });
        group.finish();
    }
}

fn bench_build(c: &mut Criterion) {
    let s = runrank::oracle::gen_instance(1_000_000, 100, 10_000, 3).unwrap();
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for tau in [4, 32] {
        group.bench_with_input(BenchmarkId::new("rlrs", tau), &tau, |b, &tau| {
            b.iter(|| runrank::RunLengthString::new(black_box(&s), 100, tau).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_queries, bench_build);
criterion_main!(benches);
