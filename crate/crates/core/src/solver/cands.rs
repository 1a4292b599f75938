//! Candidate ladders for the two segment parameters.
//!
//! Both ladders walk the monotone list of suffix (or prefix) frequencies and
//! keep an index only when its log-distance from the pooled frequency grows
//! by more than a factor `1 / (1 - eps)` over the previously kept one. Every
//! skipped parameter is therefore within a `(1 - eps)` bracket of a kept one.

use crate::blockseq::BlockSequence;
use crate::error::{Error, Result};

/// Sorted, distinct 1-based block indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CandidateSet(Vec<usize>);

impl CandidateSet {
    pub fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Sorted union.
    pub fn union(&self, other: &CandidateSet) -> CandidateSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let next = match (a.get(x), b.get(y)) {
                (Some(&u), Some(&v)) if u == v => {
                    x += 1;
                    y += 1;
                    u
                }
                (Some(&u), Some(&v)) if u < v => {
                    x += 1;
                    u
                }
                (Some(_), Some(&v)) => {
                    y += 1;
                    v
                }
                (Some(&u), None) => {
                    x += 1;
                    u
                }
                (None, Some(&v)) => {
                    y += 1;
                    v
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        CandidateSet(out)
    }
}

impl IntoIterator for CandidateSet {
    type Item = usize;
    type IntoIter = std::vec::IntoIter<usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if (0.0..1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("eps must lie in [0, 1), got {eps}")))
    }
}

/// Candidate split indices for the right-hand parameter, ascending from 1.
pub fn find_cands(seq: &BlockSequence, eps: f64) -> Result<CandidateSet> {
    check_eps(eps)?;
    Ok(find_cands_counted(seq, eps, &mut 0))
}

/// Candidate split indices for the left-hand parameter, descending from `k`.
pub fn find_cands_prime(seq: &BlockSequence, eps: f64) -> Result<CandidateSet> {
    check_eps(eps)?;
    Ok(find_cands_prime_counted(seq, eps, &mut 0))
}

pub(crate) fn find_cands_counted(seq: &BlockSequence, eps: f64, probes: &mut usize) -> CandidateSet {
    let k = seq.len();
    if k == 0 {
        return CandidateSet::default();
    }
    let mut out = vec![1];
    if k == 1 {
        return CandidateSet(out);
    }
    let ln_q = seq.totals().fraction().expect("non-empty").ln();
    // ln freq(j, k) - ln q, non-decreasing in j.
    let lift = |j: usize| seq.range(j, k).fraction().expect("suffix is non-empty").ln() - ln_q;
    let slack = 1.0 - eps;

    let mut i = 1;
    while i < k {
        *probes += 1;
        let rho = lift(i) / slack;
        // Smallest j in (i, k] with lift(j) > rho.
        let (mut lo, mut hi) = (i + 1, k + 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            *probes += 1;
            if lift(mid) > rho {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        i = lo.min(k);
        out.push(i);
    }
    CandidateSet(out)
}

pub(crate) fn find_cands_prime_counted(seq: &BlockSequence, eps: f64, probes: &mut usize) -> CandidateSet {
    let k = seq.len();
    if k == 0 {
        return CandidateSet::default();
    }
    let mut out = vec![k];
    if k == 1 {
        return CandidateSet(out);
    }
    let ln_q = seq.totals().complement_fraction().expect("non-empty").ln();
    // ln(1 - freq(1, j - 1)) - ln(1 - q) for j >= 2, non-increasing in j.
    let lift = |j: usize| {
        seq.range(1, j - 1)
            .complement_fraction()
            .expect("prefix is non-empty")
            .ln()
            - ln_q
    };
    let slack = 1.0 - eps;

    let mut i = k;
    while i > 1 {
        *probes += 1;
        let rho = lift(i) / slack;
        // Largest j in [2, i) with lift(j) > rho, or 1.
        let (mut lo, mut hi) = (2, i);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            *probes += 1;
            if lift(mid) > rho {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        // lo is the first index that fails; the one before it is the answer.
        i = if lo > 2 { lo - 1 } else { 1 };
        out.push(i);
    }
    out.reverse();
    CandidateSet(out)
}
