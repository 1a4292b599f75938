use std::cmp::Ordering;

use super::ChangeResult;
use crate::blockseq::cmp_fraction;
use crate::likelihood::{split_score, CountPair};

/// Exhaustive scan over raw split positions `2..=n`, restricted to splits
/// whose left rate does not exceed the right rate.
///
/// `O(n)`; used as a reference for the block solvers.
pub fn naive_change_raw(bits: &[bool]) -> ChangeResult {
    let n = bits.len();
    let total = bits.iter().fold(CountPair::default(), |acc, &b| acc + CountPair::from_bit(b));
    let mut left = CountPair::default();
    let mut best: Option<(usize, f64)> = None;
    for i in 2..=n {
        left += CountPair::from_bit(bits[i - 2]);
        let right = total - left;
        if cmp_fraction(left, right) == Ordering::Greater {
            continue;
        }
        let score = split_score(left, right);
        if best.map_or(true, |(_, s)| score > s) {
            best = Some((i, score));
        }
    }
    let tested = n.saturating_sub(1);
    match best {
        Some((i, score)) => ChangeResult {
            block_index: None,
            raw_index: Some(i as u64),
            score,
            tested,
            work: tested,
        },
        None => ChangeResult {
            tested,
            work: tested,
            ..ChangeResult::none(0)
        },
    }
}
