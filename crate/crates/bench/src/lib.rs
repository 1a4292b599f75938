//! Fixtures shared by the criterion benches.

use binchange::{BlockSequence, WorkloadKind, WorkloadSpec};

/// Block sequence of a Hill stream of length `n`.
pub fn hill_window(n: u64, seed: u64) -> BlockSequence {
    let mut seq = BlockSequence::new();
    seq.extend(
        WorkloadSpec::new(WorkloadKind::Hill, n, seed)
            .bits()
            .expect("positive length"),
    );
    seq
}

pub fn step_bits(n: u64, seed: u64) -> Vec<bool> {
    let segment = 10_000.min(n);
    let n = n - n % segment;
    binchange::generate(&WorkloadSpec::new(WorkloadKind::Step, n, seed).with_segment(segment))
        .expect("valid step workload")
        .bits
}
