use std::hint::black_box;

use binchange::{BlockSequence, Detector, DetectorConfig};
use binchange_bench::step_bits;
use criterion::{criterion_group, criterion_main, BatchSize, Criterion, Throughput};

fn bench_push(c: &mut Criterion) {
    let bits = step_bits(200_000, 1);
    let mut group = c.benchmark_group("push");
    group.throughput(Throughput::Elements(bits.len() as u64));

    group.bench_function("block_sequence", |b| {
        b.iter(|| {
            let mut seq = BlockSequence::new();
            seq.extend(bits.iter().copied());
            black_box(seq.len())
        })
    });

    for eps in [0.0, 0.5] {
        group.bench_function(format!("detector/eps={eps}"), |b| {
            b.iter_batched(
                || Detector::new(DetectorConfig::new(6.0, eps)).unwrap(),
                |mut det| black_box(det.run(bits.iter().copied()).len()),
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, bench_push);
criterion_main!(benches);
