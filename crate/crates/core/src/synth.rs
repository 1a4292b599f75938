//! Deterministic synthetic binary workloads.
//!
//! Bits are drawn as `u < p(t)` with `u` uniform in `[0, 1)` from a
//! `ChaCha8Rng` (rand_chacha 0.3.1) seeded with `seed_from_u64(seed)`. The
//! generator is pinned so fixtures stay bit-identical.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT: u64 = 10_000;
const LOW: f64 = 0.25;
const HIGH: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WorkloadKind {
    /// Fair coin flips.
    Ind,
    /// Alternating segments with rate 1/4 and 3/4.
    Step,
    /// Rate ramps 1/4 -> 3/4 over one segment, then back down over the next.
    Slope,
    /// Rate ramps 1/4 -> 3/4 over the whole stream.
    Hill,
}

impl WorkloadKind {
    pub const ALL: [WorkloadKind; 4] = [Self::Ind, Self::Step, Self::Slope, Self::Hill];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Ind => "ind",
            Self::Step => "step",
            Self::Slope => "slope",
            Self::Hill => "hill",
        }
    }
}

impl fmt::Display for WorkloadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WorkloadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidWorkload(format!("unknown workload kind '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkloadSpec {
    pub kind: WorkloadKind,
    pub length: u64,
    pub seed: u64,
    /// Segment length for `Step` and `Slope`.
    pub segment: u64,
}

impl WorkloadSpec {
    pub fn new(kind: WorkloadKind, length: u64, seed: u64) -> Self {
        Self {
            kind,
            length,
            seed,
            segment: DEFAULT_SEGMENT,
        }
    }

    pub fn with_segment(mut self, segment: u64) -> Self {
        self.segment = segment;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidWorkload("length must be positive".into()));
        }
        if matches!(self.kind, WorkloadKind::Step | WorkloadKind::Slope) {
            if self.segment == 0 {
                return Err(Error::InvalidWorkload("segment must be positive".into()));
            }
            if self.length % self.segment != 0 {
                return Err(Error::InvalidWorkload(format!(
                    "length {} is not a multiple of segment {}",
                    self.length, self.segment
                )));
            }
        }
        Ok(())
    }

    /// Probability of a one at 0-based position `t`.
    pub fn rate(&self, t: u64) -> f64 {
        let ramp = |pos: u64, span: u64| {
            if span <= 1 {
                LOW
            } else {
                LOW + (HIGH - LOW) * pos as f64 / (span - 1) as f64
            }
        };
        match self.kind {
            WorkloadKind::Ind => 0.5,
            WorkloadKind::Step => {
                if (t / self.segment) % 2 == 0 {
                    LOW
                } else {
                    HIGH
                }
            }
            WorkloadKind::Slope => {
                let up = ramp(t % self.segment, self.segment);
                if (t / self.segment) % 2 == 0 {
                    up
                } else {
                    HIGH + LOW - up
                }
            }
            WorkloadKind::Hill => ramp(t, self.length),
        }
    }

    /// 1-based positions where the rate jumps. Only `Step` has any.
    pub fn true_changes(&self) -> Vec<u64> {
        match self.kind {
            WorkloadKind::Step => (1..self.length / self.segment).map(|s| s * self.segment + 1).collect(),
            _ => Vec::new(),
        }
    }

    /// Lazily generated bit stream.
    pub fn bits(&self) -> Result<impl Iterator<Item = bool>> {
        self.validate()?;
        let spec = *self;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        Ok((0..spec.length).map(move |t| rng.gen::<f64>() < spec.rate(t)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    pub bits: Vec<bool>,
    pub true_changes: Vec<u64>,
}

pub fn generate(spec: &WorkloadSpec) -> Result<Workload> {
    Ok(Workload {
        bits: spec.bits()?.collect(),
        true_changes: spec.true_changes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean(bits: &[bool]) -> f64 {
        bits.iter().filter(|&&b| b).count() as f64 / bits.len() as f64
    }

    #[test]
    fn step_truth_positions() {
        let w = generate(&WorkloadSpec::new(WorkloadKind::Step, 200_000, 1)).unwrap();
        assert_eq!(w.bits.len(), 200_000);
        assert_eq!(w.true_changes.len(), 19);
        assert_eq!(w.true_changes[0], 10_001);
        assert_eq!(w.true_changes[1], 20_001);
        assert_eq!(*w.true_changes.last().unwrap(), 190_001);
    }

    #[test]
    fn step_segment_means() {
        let w = generate(&WorkloadSpec::new(WorkloadKind::Step, 200_000, 3)).unwrap();
        for (s, seg) in w.bits.chunks(10_000).enumerate() {
            let p = if s % 2 == 0 { 0.25 } else { 0.75 };
            assert!((mean(seg) - p).abs() < 0.02, "segment {}", s + 1);
        }
    }

    #[test]
    fn stationary_kinds_have_no_truth() {
        for kind in [WorkloadKind::Ind, WorkloadKind::Slope, WorkloadKind::Hill] {
            let w = generate(&WorkloadSpec::new(kind, 20_000, 9)).unwrap();
            assert!(w.true_changes.is_empty());
        }
    }

    #[test]
    fn reproducible() {
        let spec = WorkloadSpec::new(WorkloadKind::Slope, 40_000, 42);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = WorkloadSpec { seed: 43, ..spec };
        assert_ne!(generate(&spec).unwrap().bits, generate(&other).unwrap().bits);
    }

    #[test]
    fn ramps_follow_the_rate_path() {
        let slope = WorkloadSpec::new(WorkloadKind::Slope, 200_000, 5).with_segment(100_000);
        let hill = WorkloadSpec::new(WorkloadKind::Hill, 200_000, 5);
        for spec in [slope, hill] {
            let w = generate(&spec).unwrap();
            for (b, chunk) in w.bits.chunks(10_000).enumerate() {
                let start = b as u64 * 10_000;
                let expected: f64 = (start..start + 10_000).map(|t| spec.rate(t)).sum::<f64>() / 10_000.0;
                assert!((mean(chunk) - expected).abs() < 0.03, "{} bin {b}", spec.kind);
            }
        }
    }

    #[test]
    fn rate_endpoints() {
        let slope = WorkloadSpec::new(WorkloadKind::Slope, 40_000, 0);
        assert_eq!(slope.rate(0), 0.25);
        assert_eq!(slope.rate(9_999), 0.75);
        assert_eq!(slope.rate(10_000), 0.75);
        assert_eq!(slope.rate(19_999), 0.25);
        let hill = WorkloadSpec::new(WorkloadKind::Hill, 1_000, 0);
        assert_eq!(hill.rate(0), 0.25);
        assert_eq!(hill.rate(999), 0.75);
    }

    #[test]
    fn invalid_specs() {
        assert!(WorkloadSpec::new(WorkloadKind::Ind, 0, 0).validate().is_err());
        assert!(WorkloadSpec::new(WorkloadKind::Step, 15_000, 0).validate().is_err());
        assert!(WorkloadSpec::new(WorkloadKind::Step, 10, 0).with_segment(0).validate().is_err());
        assert!(WorkloadSpec::new(WorkloadKind::Hill, 15_000, 0).validate().is_ok());
        assert!("nope".parse::<WorkloadKind>().is_err());
        assert_eq!("Step".parse::<WorkloadKind>().unwrap(), WorkloadKind::Step);
    }
}
