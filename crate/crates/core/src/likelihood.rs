//! Bernoulli log-likelihood kernels.
//!
//! All values are natural-log likelihoods (nats). A count of zero multiplied by
//! `ln 0` contributes zero, so a pure segment evaluated at its boundary
//! parameter stays finite. A likelihood that assigns zero probability to an
//! observed outcome is `f64::NEG_INFINITY`.

use std::ops::{Add, AddAssign, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counts of ones and zeros in a segment of the stream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountPair {
    pub ones: u64,
    pub zeros: u64,
}

impl CountPair {
    pub const fn new(ones: u64, zeros: u64) -> Self {
        Self { ones, zeros }
    }

    /// A single observation.
    pub const fn from_bit(bit: bool) -> Self {
        if bit {
            Self::new(1, 0)
        } else {
            Self::new(0, 1)
        }
    }

    pub const fn total(&self) -> u64 {
        self.ones + self.zeros
    }

    pub const fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Swaps the role of ones and zeros.
    pub const fn flipped(&self) -> Self {
        Self::new(self.zeros, self.ones)
    }

    /// Maximum-likelihood parameter `ones / total`, or `None` for an empty pair.
    pub fn fraction(&self) -> Option<f64> {
        if self.is_empty() {
            None
        } else {
            Some(self.ones as f64 / self.total() as f64)
        }
    }

    /// `zeros / total`, computed directly rather than as `1 - fraction`.
    pub fn complement_fraction(&self) -> Option<f64> {
        if self.is_empty() {
            None
        } else {
            Some(self.zeros as f64 / self.total() as f64)
        }
    }
}

impl Add for CountPair {
    type Output = CountPair;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.ones + rhs.ones, self.zeros + rhs.zeros)
    }
}

impl AddAssign for CountPair {
    fn add_assign(&mut self, rhs: Self) {
        self.ones += rhs.ones;
        self.zeros += rhs.zeros;
    }
}

impl Sub for CountPair {
    type Output = CountPair;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.ones - rhs.ones, self.zeros - rhs.zeros)
    }
}

/// Log-likelihood score in nats. May be `-inf`.
pub type Score = f64;

/// `count * ln(p)` with `0 * ln(0) = 0`.
#[inline]
fn xlogp(count: u64, p: f64) -> f64 {
    if count == 0 {
        0.0
    } else {
        count as f64 * p.ln()
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// `ones * ln(p) + zeros * ln(1 - p)`.
pub fn log_likelihood(counts: CountPair, p: f64) -> Result<Score> {
    check_probability(p)?;
    Ok(log_likelihood_unchecked(counts, p))
}

#[inline]
pub(crate) fn log_likelihood_unchecked(counts: CountPair, p: f64) -> Score {
    xlogp(counts.ones, p) + xlogp(counts.zeros, 1.0 - p)
}

/// Log-likelihood at the maximum-likelihood parameter; zero for an empty pair.
pub fn ml_log_likelihood(counts: CountPair) -> Score {
    let total = counts.total();
    if counts.ones == 0 || counts.zeros == 0 {
        return 0.0;
    }
    let total = total as f64;
    // Use the exact complement so neither term loses precision to 1 - p.
    xlogp(counts.ones, counts.ones as f64 / total) + xlogp(counts.zeros, counts.zeros as f64 / total)
}

/// Log-likelihood ratio of the two-segment model against the pooled model.
///
/// The value is never negative; rounding noise below zero is clamped.
pub fn split_score(left: CountPair, right: CountPair) -> Score {
    let value = ml_log_likelihood(left) + ml_log_likelihood(right) - ml_log_likelihood(left + right);
    value.max(0.0)
}

/// Like [`split_score`] but with the segment parameters fixed to `p1` and `p2`.
pub fn split_score_fixed(left: CountPair, right: CountPair, p1: f64, p2: f64) -> Result<Score> {
    check_probability(p1)?;
    check_probability(p2)?;
    Ok(log_likelihood_unchecked(left, p1) + log_likelihood_unchecked(right, p2)
        - ml_log_likelihood(left + right))
}
