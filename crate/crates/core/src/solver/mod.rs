//! Change-point search over a block sequence.
//!
//! A split index `i` (1-based, `2..=k`) puts blocks `1..i` on the left and
//! `i..=k` on the right. [`exact_change_block`] scans every split;
//! [`find_change`] tests only the candidate ladders plus one fixed-parameter
//! search per gap, and is within a factor `1 - eps` of the exact score.

pub(crate) mod cands;
mod naive;
mod segment;

pub use cands::{find_cands, find_cands_prime, CandidateSet};
pub use naive::naive_change_raw;
pub use segment::find_segment;

use crate::blockseq::BlockSequence;
use crate::error::Result;
use crate::likelihood::{split_score, Score};

/// Best split found by a solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChangeResult {
    /// Split index in block coordinates, `None` when no split exists.
    pub block_index: Option<usize>,
    /// 1-based raw position of the first entry of the right segment.
    pub raw_index: Option<u64>,
    /// Log-likelihood ratio in nats; zero when there is no split.
    pub score: Score,
    /// Number of split scores evaluated.
    pub tested: usize,
    /// Total elementary evaluations, including binary-search probes.
    pub work: usize,
}

impl ChangeResult {
    pub(crate) fn none(work: usize) -> Self {
        Self {
            block_index: None,
            raw_index: None,
            score: 0.0,
            tested: 0,
            work,
        }
    }

    pub fn has_split(&self) -> bool {
        self.raw_index.is_some()
    }
}

/// Running argmax with smallest-index tie-break.
struct Best<'a> {
    seq: &'a BlockSequence,
    index: usize,
    score: Score,
    tested: usize,
}

impl<'a> Best<'a> {
    fn new(seq: &'a BlockSequence) -> Self {
        Self {
            seq,
            index: 0,
            score: f64::NEG_INFINITY,
            tested: 0,
        }
    }

    fn test(&mut self, i: usize) {
        let k = self.seq.len();
        let score = split_score(self.seq.range(1, i - 1), self.seq.range(i, k));
        self.offer(i, score);
    }

    fn offer(&mut self, i: usize, score: Score) {
        self.tested += 1;
        if score > self.score || (score == self.score && i < self.index) {
            self.index = i;
            self.score = score;
        }
    }

    fn finish(self, extra_work: usize) -> ChangeResult {
        if self.tested == 0 {
            return ChangeResult::none(extra_work);
        }
        ChangeResult {
            block_index: Some(self.index),
            raw_index: self.seq.raw_offset(self.index),
            score: self.score,
            tested: self.tested,
            work: self.tested + extra_work,
        }
    }
}

/// Exact optimum over all splits `2..=k` in `O(k)`.
pub fn exact_change_block(seq: &BlockSequence) -> ChangeResult {
    let k = seq.len();
    if k < 2 {
        return ChangeResult::none(0);
    }
    let total = seq.totals();
    let mut best = Best::new(seq);
    let mut left = seq.blocks()[0];
    for i in 2..=k {
        best.offer(i, split_score(left, total - left));
        left += seq.blocks()[i - 1];
    }
    best.finish(0)
}

/// `(1 - eps)`-approximate optimum.
///
/// With `eps == 0` this is [`exact_change_block`].
pub fn find_change(seq: &BlockSequence, eps: f64) -> Result<ChangeResult> {
    cands::check_eps(eps)?;
    Ok(find_change_unchecked(seq, eps))
}

pub(crate) fn find_change_unchecked(seq: &BlockSequence, eps: f64) -> ChangeResult {
    let k = seq.len();
    if k < 2 {
        return ChangeResult::none(0);
    }
    if eps == 0.0 {
        return exact_change_block(seq);
    }

    let mut probes = 0;
    let right = cands::find_cands_counted(seq, eps, &mut probes);
    let left = cands::find_cands_prime_counted(seq, eps, &mut probes);
    let cands = left.union(&right);

    let mut best = Best::new(seq);
    let mut prev: Option<usize> = None;
    for c in cands.iter() {
        if c >= 2 {
            best.test(c);
        }
        if let Some(p) = prev.filter(|&p| p + 1 < c) {
            // Both ranges span at least two blocks, so neither is empty.
            let r1 = seq.range(1, c - 1).fraction().expect("non-empty prefix");
            let r2 = seq.range(p, k).fraction().expect("non-empty suffix");
            if r1 < r2 {
                let i = segment::find_segment_counted(seq, r1, r2, &mut probes);
                best.test(i.clamp(2, k));
            }
        }
        prev = Some(c);
    }
    best.finish(probes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::likelihood::CountPair;

    fn seq(blocks: &[(u64, u64)]) -> BlockSequence {
        BlockSequence::from_blocks(blocks.iter().map(|&(a, b)| CountPair::new(a, b))).unwrap()
    }

    #[test]
    fn exact_two_blocks() {
        let s = seq(&[(0, 2), (2, 0)]);
        let r = exact_change_block(&s);
        assert_eq!(r.block_index, Some(2));
        assert_eq!(r.raw_index, Some(3));
        assert!((r.score - 4.0 * std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(r.tested, 1);
    }

    #[test]
    fn single_block_has_no_split() {
        let s = seq(&[(3, 3)]);
        for r in [exact_change_block(&s), find_change(&s, 0.5).unwrap()] {
            assert!(!r.has_split());
            assert_eq!(r.score, 0.0);
        }
        assert!(!find_change(&BlockSequence::new(), 0.2).unwrap().has_split());
    }

    #[test]
    fn zero_eps_is_exact() {
        let s = seq(&[(0, 5), (1, 3), (1, 2), (2, 2), (3, 1), (4, 0)]);
        assert_eq!(find_change(&s, 0.0).unwrap(), exact_change_block(&s));
    }

    #[test]
    fn approximate_on_long_sequence() {
        let s = BlockSequence::from_blocks((0..60).map(|i| CountPair::new(i, 60 - i))).unwrap();
        let opt = exact_change_block(&s);
        for eps in [0.1, 0.3, 0.5, 0.9] {
            let r = find_change(&s, eps).unwrap();
            assert!(r.score >= (1.0 - eps) * opt.score - 1e-12, "eps {eps}");
            assert!(r.score <= opt.score + 1e-12);
            assert!(r.tested < opt.tested, "eps {eps}: {} tests", r.tested);
            let i = r.block_index.unwrap();
            assert!((2..=s.len()).contains(&i));
        }
    }

    #[test]
    fn rejects_bad_eps() {
        assert!(find_change(&seq(&[(0, 1), (1, 0)]), 1.0).is_err());
    }
}
