//! Online two-sided change detector.
//!
//! Every observation is pushed into two block sequences, one for the stream
//! and one for its complement, so that both increases and decreases of the
//! rate surface as the increasing case. A change is declared when the best
//! split score exceeds `tau + ln n`, after which the window starts afresh.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blockseq::BlockSequence;
use crate::error::{Error, Result};
use crate::solver::{exact_change_block, find_change_unchecked, ChangeResult};

/// Below this many blocks the exact scan is cheaper than the ladders.
pub const DEFAULT_HYBRID_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    /// Threshold slack on top of the `ln n` penalty.
    pub tau: f64,
    /// Approximation slack in `[0, 1)`.
    pub eps: f64,
    /// Query every this many observations.
    pub query_period: u64,
    /// Windows with at most this many blocks are solved exactly.
    pub hybrid_cutoff: usize,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            tau: 6.0,
            eps: 0.0,
            query_period: 1,
            hybrid_cutoff: DEFAULT_HYBRID_CUTOFF,
        }
    }
}

impl DetectorConfig {
    pub fn new(tau: f64, eps: f64) -> Self {
        Self {
            tau,
            eps,
            ..Self::default()
        }
    }

    pub fn with_query_period(mut self, period: u64) -> Self {
        self.query_period = period;
        self
    }

    pub fn with_hybrid_cutoff(mut self, cutoff: usize) -> Self {
        self.hybrid_cutoff = cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau >= 0.0) {
            return Err(Error::InvalidConfig(format!("tau must be non-negative, got {}", self.tau)));
        }
        crate::solver::cands::check_eps(self.eps)?;
        if self.query_period == 0 {
            return Err(Error::InvalidConfig("query period must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increase,
    Decrease,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increase => "increase",
            Direction::Decrease => "decrease",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChangeEvent {
    /// 1-based stream position of the observation that triggered detection.
    pub detected_at: u64,
    /// 1-based stream position of the first entry after the split.
    pub split_at: u64,
    pub score: f64,
    pub direction: Direction,
    /// Window length at detection.
    pub window_len: u64,
}

/// Scores of both polarities for the current window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Query {
    pub increase: ChangeResult,
    pub decrease: ChangeResult,
}

impl Query {
    /// Winning polarity and its result; ties go to `Increase`.
    pub fn best(&self) -> (Direction, &ChangeResult) {
        if self.decrease.score > self.increase.score {
            (Direction::Decrease, &self.decrease)
        } else {
            (Direction::Increase, &self.increase)
        }
    }
}

/// `tau + ln n`.
pub fn threshold(tau: f64, window_len: u64) -> Result<f64> {
    if window_len == 0 {
        return Err(Error::EmptyWindow);
    }
    Ok(tau + (window_len as f64).ln())
}

#[derive(Debug, Clone)]
pub struct Detector {
    config: DetectorConfig,
    increase: BlockSequence,
    decrease: BlockSequence,
    /// Observations consumed from the stream so far.
    position: u64,
    since_query: u64,
}

impl Detector {
    pub fn new(config: DetectorConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            increase: BlockSequence::new(),
            decrease: BlockSequence::new(),
            position: 0,
            since_query: 0,
        })
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    /// Block sequence of the stream since the last change.
    pub fn increasing(&self) -> &BlockSequence {
        &self.increase
    }

    /// Block sequence of the complemented stream since the last change.
    pub fn decreasing(&self) -> &BlockSequence {
        &self.decrease
    }

    /// Stream entries observed so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn window_len(&self) -> u64 {
        self.increase.raw_len()
    }

    /// Current detection threshold `tau + ln n`.
    pub fn sigma(&self) -> Result<f64> {
        threshold(self.config.tau, self.window_len())
    }

    /// Feeds one observation and reports a change if one is detected.
    pub fn observe(&mut self, bit: bool) -> Option<ChangeEvent> {
        if self.push(bit) {
            self.evaluate()
        } else {
            None
        }
    }

    /// Feeds one observation without querying. Returns whether a query is due.
    pub fn push(&mut self, bit: bool) -> bool {
        self.increase.push(bit);
        self.decrease.push(!bit);
        self.position += 1;
        self.since_query += 1;
        self.since_query >= self.config.query_period
    }

    /// Solves both polarities on the current window.
    pub fn query(&self) -> Query {
        Query {
            increase: self.solve(&self.increase),
            decrease: self.solve(&self.decrease),
        }
    }

    fn solve(&self, seq: &BlockSequence) -> ChangeResult {
        if seq.len() <= self.config.hybrid_cutoff {
            exact_change_block(seq)
        } else {
            find_change_unchecked(seq, self.config.eps)
        }
    }

    /// Queries the window and, when the threshold is exceeded, emits an event
    /// and resets the window.
    pub fn evaluate(&mut self) -> Option<ChangeEvent> {
        self.since_query = 0;
        let n = self.window_len();
        if n == 0 {
            return None;
        }
        let query = self.query();
        let (direction, best) = query.best();
        let sigma = self.config.tau + (n as f64).ln();
        if !(best.score > sigma) {
            return None;
        }
        let window_start = self.position - n;
        let event = ChangeEvent {
            detected_at: self.position,
            split_at: window_start + best.raw_index.expect("positive score implies a split"),
            score: best.score,
            direction,
            window_len: n,
        };
        self.reset_window();
        Some(event)
    }

    fn reset_window(&mut self) {
        self.increase.reset();
        self.decrease.reset();
    }

    /// Runs the detector over a stream and collects every event.
    pub fn run(&mut self, bits: impl IntoIterator<Item = bool>) -> Vec<ChangeEvent> {
        bits.into_iter().filter_map(|b| self.observe(b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        assert!((threshold(6.0, 20_000).unwrap() - 15.9035).abs() < 1e-4);
        assert_eq!(threshold(0.0, 1).unwrap(), 0.0);
        assert_eq!(threshold(1.0, 0), Err(Error::EmptyWindow));
        let mut prev = f64::NEG_INFINITY;
        for n in 1..2000 {
            let s = threshold(3.0, n).unwrap();
            assert!(s >= prev);
            prev = s;
        }
    }

    #[test]
    fn sigma_tracks_window() {
        let mut det = Detector::new(DetectorConfig::new(2.0, 0.0)).unwrap();
        assert_eq!(det.sigma(), Err(Error::EmptyWindow));
        det.observe(true);
        assert_eq!(det.sigma().unwrap(), 2.0);
    }

    #[test]
    fn constant_stream_never_fires() {
        let mut det = Detector::new(DetectorConfig::new(0.0, 0.0)).unwrap();
        assert!(det.run(std::iter::repeat(false).take(5000)).is_empty());
        assert_eq!(det.increasing().len(), 1);
    }

    #[test]
    fn ones_then_zeros_is_a_decrease() {
        let mut det = Detector::new(DetectorConfig::new(6.0, 0.0)).unwrap();
        let stream = std::iter::repeat(true).take(200).chain(std::iter::repeat(false).take(200));
        let events = det.run(stream);
        assert_eq!(events.len(), 1);
        let e = events[0];
        assert_eq!(e.direction, Direction::Decrease);
        assert_eq!(e.split_at, 201);
        assert!(e.detected_at > 200 && e.detected_at < 215);
        assert!(e.score > 6.0 + (e.window_len as f64).ln());

        let mut mirror = Detector::new(DetectorConfig::new(6.0, 0.0)).unwrap();
        let flipped = std::iter::repeat(false).take(200).chain(std::iter::repeat(true).take(200));
        let m = mirror.run(flipped);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].direction, Direction::Increase);
        assert_eq!((m[0].detected_at, m[0].split_at), (e.detected_at, e.split_at));
        assert_eq!(m[0].score, e.score);
    }

    #[test]
    fn window_resets_after_event() {
        let mut det = Detector::new(DetectorConfig::new(1.0, 0.0)).unwrap();
        let stream = std::iter::repeat(false).take(100).chain(std::iter::repeat(true).take(100));
        let mut fired = false;
        for b in stream {
            if det.observe(b).is_some() {
                fired = true;
                assert!(det.increasing().is_empty());
                assert!(det.decreasing().is_empty());
                assert_eq!(det.window_len(), 0);
            }
        }
        assert!(fired);
    }

    #[test]
    fn query_period_delays_queries() {
        let mut det = Detector::new(DetectorConfig::new(0.0, 0.0).with_query_period(3)).unwrap();
        assert!(!det.push(false));
        assert!(!det.push(false));
        assert!(det.push(true));
        det.evaluate();
        assert!(!det.push(true));
    }

    #[test]
    fn config_validation() {
        assert!(DetectorConfig::new(-1.0, 0.0).validate().is_err());
        assert!(DetectorConfig::new(f64::NAN, 0.0).validate().is_err());
        assert!(DetectorConfig::new(1.0, 1.0).validate().is_err());
        assert!(DetectorConfig::new(1.0, 0.5).with_query_period(0).validate().is_err());
        assert!(Detector::new(DetectorConfig::default()).is_ok());
    }
}
