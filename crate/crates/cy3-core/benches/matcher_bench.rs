//! Benchmarks the bounded match search.
//!
//! Build with the default `parallel` feature to run chunks on the rayon
//! pool, and with `--no-default-features` for the sequential fallback;
//! comparing the two runs measures the dispatch overhead directly,
//! while the chunk-count axis below measures scheduling granularity
//! inside one build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cy3_core::matcher::{builtin_problem, enumerate_matches_chunked, EquationKind};

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for upper in [10i64, 20] {
        let problem = builtin_problem(EquationKind::Paper, 0, upper).expect("valid problem");
        for chunks in [1usize, 16] {
            group.bench_with_input(
                BenchmarkId::new(format!("box-{upper}"), chunks),
                &chunks,
                |b, &chunks| {
                    b.iter(|| enumerate_matches_chunked(&problem, chunks).expect("search runs"))
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_enumeration);
criterion_main!(benches);
