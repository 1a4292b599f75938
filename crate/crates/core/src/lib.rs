//! Streaming change-point detection for binary sequences.
//!
//! The window since the last detected change is kept as a sequence of
//! border-index blocks with strictly increasing rates of ones. The best
//! two-segment likelihood-ratio split over that window is found either
//! exactly in `O(k)` or within a factor `1 - eps` in
//! `O(eps^-1 log^2 n)`, and compared against `tau + ln n`.
//!
//! ```
//! use binchange::{Detector, DetectorConfig};
//!
//! let mut det = Detector::new(DetectorConfig::new(6.0, 0.1)).unwrap();
//! let stream = std::iter::repeat(false).take(500).chain(std::iter::repeat(true).take(50));
//! let events = det.run(stream);
//! assert_eq!(events.len(), 1);
//! assert_eq!(events[0].split_at, 501);
//! ```

pub mod blockseq;
pub mod detector;
pub mod error;
pub mod eval;
pub mod likelihood;
pub mod solver;
pub mod synth;

pub use blockseq::{Block, BlockSequence, Frequency};
pub use detector::{threshold, ChangeEvent, Detector, DetectorConfig, Direction, Query};
pub use error::{Error, Result};
pub use eval::{run_experiment, ExperimentGrid, MetricsRow, RunMetrics};
pub use likelihood::{log_likelihood, ml_log_likelihood, split_score, split_score_fixed, CountPair, Score};
pub use solver::{
    exact_change_block, find_cands, find_cands_prime, find_change, find_segment, naive_change_raw,
    CandidateSet, ChangeResult,
};
pub use synth::{generate, Workload, WorkloadKind, WorkloadSpec};
