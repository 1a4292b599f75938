use std::hint::black_box;

use binchange::{exact_change_block, find_change};
use binchange_bench::hill_window;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_find_change(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_change");
    for n in [100_000u64, 1_000_000] {
        let seq = hill_window(n, 1);
        group.bench_with_input(BenchmarkId::new("exact", n), &seq, |b, seq| {
            b.iter(|| black_box(exact_change_block(seq).score))
        });
        for eps in [0.1, 0.5, 0.9] {
            group.bench_with_input(BenchmarkId::new(format!("eps={eps}"), n), &seq, |b, seq| {
                b.iter(|| black_box(find_change(seq, eps).unwrap().score))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_find_change);
criterion_main!(benches);
