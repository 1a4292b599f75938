use crate::blockseq::BlockSequence;
use crate::error::{Error, Result};
use crate::likelihood::log_likelihood_unchecked;

/// Optimal split for fixed segment parameters `p1 < p2`.
///
/// The per-block difference `d_j = l(u_j, v_j; p1) - l(u_j, v_j; p2)` is
/// positive exactly on a prefix of the blocks, so the first block with
/// `d_j <= 0` is found by binary search. The returned index lies in
/// `1..=k + 1`, where `1` means "everything on the right" and `k + 1`
/// "everything on the left"; among equal scores it is the smallest.
pub fn find_segment(seq: &BlockSequence, p1: f64, p2: f64) -> Result<usize> {
    for p in [p1, p2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
    }
    if p1 >= p2 {
        return Err(Error::UnorderedParameters { p1, p2 });
    }
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(find_segment_counted(seq, p1, p2, &mut 0))
}

/// Relative size below which a likelihood difference is a tie.
const TIE_TOLERANCE: f64 = 1e-12;

#[cfg(test)]
fn block_gain(seq: &BlockSequence, j: usize, p1: f64, p2: f64) -> f64 {
    let block = seq.blocks()[j - 1];
    log_likelihood_unchecked(block, p1) - log_likelihood_unchecked(block, p2)
}

/// Whether block `j` belongs on the left. Ties go right so the split index
/// is the smallest optimal one; an undefined difference (`-inf - -inf` at
/// `p1 = 0`, `p2 = 1`) counts as non-positive.
#[inline]
fn prefers_left(seq: &BlockSequence, j: usize, p1: f64, p2: f64) -> bool {
    let block = seq.blocks()[j - 1];
    let left = log_likelihood_unchecked(block, p1);
    let right = log_likelihood_unchecked(block, p2);
    let d = left - right;
    if d.is_finite() {
        d > TIE_TOLERANCE * (left.abs() + right.abs())
    } else {
        d > 0.0
    }
}

pub(crate) fn find_segment_counted(seq: &BlockSequence, p1: f64, p2: f64, probes: &mut usize) -> usize {
    let (mut lo, mut hi) = (1, seq.len() + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        *probes += 1;
        if prefers_left(seq, mid, p1, p2) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::likelihood::{split_score_fixed, CountPair};

    fn three() -> BlockSequence {
        BlockSequence::from_blocks([
            CountPair::new(0, 2),
            CountPair::new(1, 1),
            CountPair::new(2, 0),
        ])
        .unwrap()
    }

    #[test]
    fn three_block_example() {
        let seq = three();
        // d1 = 2 ln 9, d2 = 0, d3 = -2 ln 9.
        assert!((block_gain(&seq, 1, 0.1, 0.9) - 2.0 * 9f64.ln()).abs() < 1e-12);
        // Zero up to the rounding of 0.1 and 0.9.
        assert!(block_gain(&seq, 2, 0.1, 0.9).abs() < 1e-15);
        assert!(!prefers_left(&seq, 2, 0.1, 0.9));
        assert!(block_gain(&seq, 3, 0.1, 0.9) < 0.0);
        assert_eq!(find_segment(&seq, 0.1, 0.9).unwrap(), 2);
    }

    #[test]
    fn single_block_boundary() {
        let seq = BlockSequence::from_blocks([CountPair::new(0, 5)]).unwrap();
        // d1 = 5 (ln 0.8 - ln 0.2) > 0: everything belongs on the left.
        assert_eq!(find_segment(&seq, 0.2, 0.8).unwrap(), 2);
        let ones = BlockSequence::from_blocks([CountPair::new(5, 0)]).unwrap();
        assert_eq!(find_segment(&ones, 0.2, 0.8).unwrap(), 1);
    }

    #[test]
    fn matches_linear_scan_on_example() {
        let seq = three();
        let k = seq.len();
        let scores: Vec<f64> = (1..=k + 1)
            .map(|i| {
                let left = seq.range_counts(1, i - 1).unwrap();
                let right = if i <= k { seq.range_counts(i, k).unwrap() } else { CountPair::default() };
                split_score_fixed(left, right, 0.1, 0.9).unwrap()
            })
            .collect();
        let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let first = scores.iter().position(|&s| s >= best - 1e-12).unwrap() + 1;
        assert_eq!(first, find_segment(&seq, 0.1, 0.9).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        let seq = three();
        assert!(matches!(
            find_segment(&seq, 0.6, 0.4),
            Err(Error::UnorderedParameters { .. })
        ));
        assert!(matches!(find_segment(&seq, 0.5, 0.5), Err(Error::UnorderedParameters { .. })));
        assert!(matches!(find_segment(&seq, -0.5, 0.5), Err(Error::InvalidProbability(_))));
        assert_eq!(find_segment(&BlockSequence::new(), 0.1, 0.2), Err(Error::EmptySequence));
    }

    #[test]
    fn extreme_parameters_do_not_panic() {
        let seq = three();
        let i = find_segment(&seq, 0.0, 1.0).unwrap();
        assert!((1..=4).contains(&i));
    }
}
