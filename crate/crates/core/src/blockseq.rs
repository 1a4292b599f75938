//! Border-index block sequence of a binary stream window.
//!
//! Blocks are maximal runs between consecutive border indices. Their
//! one-fractions are strictly increasing, which is maintained under appends
//! by pool-adjacent-violators tail merging.
//!
//! Block indices in the public API are 1-based: block `i` is `blocks()[i - 1]`,
//! and raw stream positions are 1-based as well.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::likelihood::CountPair;

/// A block is summarised by its counts of ones and zeros.
pub type Block = CountPair;

/// Exact ratio `ones / (ones + zeros)` over a block range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frequency {
    pub numerator: u64,
    pub denominator: u64,
}

impl Frequency {
    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl PartialOrd for Frequency {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frequency {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

/// `ones(a) / total(a)` compared with `ones(b) / total(b)` without rounding.
/// Both pairs must be non-empty.
#[inline]
pub(crate) fn cmp_fraction(a: CountPair, b: CountPair) -> Ordering {
    let lhs = a.ones as u128 * b.total() as u128;
    let rhs = b.ones as u128 * a.total() as u128;
    lhs.cmp(&rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSequence {
    blocks: Vec<Block>,
    /// `prefix[j]` holds the counts of blocks `1..=j`; `prefix[0]` is empty.
    prefix: Vec<CountPair>,
    /// Raw 1-based start position of each block.
    offsets: Vec<u64>,
    raw_len: u64,
    merges: u64,
}

impl Default for BlockSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl BlockSequence {
    pub fn new() -> Self {
        Self {
            blocks: Vec::new(),
            prefix: vec![CountPair::default()],
            offsets: Vec::new(),
            raw_len: 0,
            merges: 0,
        }
    }

    /// Builds a sequence directly from blocks, validating the invariants.
    pub fn from_blocks(blocks: impl IntoIterator<Item = Block>) -> Result<Self> {
        let mut seq = Self::new();
        for (idx, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock(idx + 1));
            }
            if let Some(&last) = seq.blocks.last() {
                if cmp_fraction(block, last) != Ordering::Greater {
                    return Err(Error::NotIncreasing(idx + 1));
                }
            }
            seq.append_block(block);
        }
        Ok(seq)
    }

    /// Block sequence of an entire bit slice.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut seq = Self::new();
        seq.extend(bits.iter().copied());
        seq
    }

    fn append_block(&mut self, block: Block) {
        let total = *self.prefix.last().expect("prefix is never empty") + block;
        self.offsets.push(self.raw_len + 1);
        self.raw_len += block.total();
        self.blocks.push(block);
        self.prefix.push(total);
    }

    /// Appends one observation and restores the increasing-fraction invariant.
    pub fn push(&mut self, bit: bool) {
        self.append_block(CountPair::from_bit(bit));
        while self.blocks.len() >= 2 {
            let n = self.blocks.len();
            let last = self.blocks[n - 1];
            let prev = self.blocks[n - 2];
            if cmp_fraction(last, prev) == Ordering::Greater {
                break;
            }
            self.blocks.pop();
            self.blocks[n - 2] = prev + last;
            self.offsets.pop();
            // The merged block ends where the popped one did.
            let end = self.prefix.pop().expect("prefix has k + 1 entries");
            *self.prefix.last_mut().expect("prefix has k entries") = end;
            self.merges += 1;
        }
    }

    pub fn reset(&mut self) {
        self.blocks.clear();
        self.prefix.truncate(1);
        self.offsets.clear();
        self.raw_len = 0;
    }

    /// Number of blocks `k`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of raw entries `n` in the window.
    pub fn raw_len(&self) -> u64 {
        self.raw_len
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// 1-based raw start positions, aligned with [`blocks`](Self::blocks).
    pub fn raw_offsets(&self) -> &[u64] {
        &self.offsets
    }

    /// Raw start position of block `i` (1-based).
    pub fn raw_offset(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|idx| self.offsets.get(idx).copied())
    }

    /// Total tail merges performed since construction. Not cleared by [`reset`](Self::reset).
    pub fn merge_count(&self) -> u64 {
        self.merges
    }

    /// Counts of the whole window.
    pub fn totals(&self) -> CountPair {
        self.prefix[self.blocks.len()]
    }

    /// Counts of blocks `i..=j`; empty when `i > j`.
    pub fn range_counts(&self, i: usize, j: usize) -> Result<CountPair> {
        let k = self.len();
        if i > j {
            // Bounds still apply to the endpoints that were named.
            if i > k + 1 || j > k {
                return Err(Error::IndexOutOfBounds { i, j, len: k });
            }
            return Ok(CountPair::default());
        }
        if i == 0 || j > k {
            return Err(Error::IndexOutOfBounds { i, j, len: k });
        }
        Ok(self.range(i, j))
    }

    /// Unchecked range counts; `1 <= i` and `j <= k`, or `i == j + 1`.
    #[inline]
    pub(crate) fn range(&self, i: usize, j: usize) -> CountPair {
        if i > j {
            CountPair::default()
        } else {
            self.prefix[j] - self.prefix[i - 1]
        }
    }

    /// Exact one-fraction of blocks `i..=j`.
    pub fn freq(&self, i: usize, j: usize) -> Result<Frequency> {
        let c = self.range_counts(i, j)?;
        if c.is_empty() {
            return Err(Error::EmptyRange);
        }
        Ok(Frequency {
            numerator: c.ones,
            denominator: c.total(),
        })
    }

    /// Same as [`freq`](Self::freq) as a float.
    pub fn freq_f64(&self, i: usize, j: usize) -> Result<f64> {
        self.freq(i, j).map(|f| f.as_f64())
    }

    /// One line per block: `ones zeros raw_offset`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (b, off) in self.blocks.iter().zip(&self.offsets) {
            let _ = writeln!(out, "{} {} {}", b.ones, b.zeros, off);
        }
        out
    }

    /// Parses the output of [`dump`](Self::dump). Offsets must be contiguous.
    pub fn from_dump(text: &str) -> Result<Self> {
        let mut seq = Self::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| Error::MalformedDump {
                line: line_no,
                reason: reason.to_string(),
            };
            let fields: Vec<u64> = line
                .split_whitespace()
                .map(|f| f.parse::<u64>().map_err(|_| bad("expected unsigned integers")))
                .collect::<Result<_>>()?;
            let [ones, zeros, offset] = fields[..] else {
                return Err(bad("expected three fields"));
            };
            let block = CountPair::new(ones, zeros);
            if block.is_empty() {
                return Err(bad("empty block"));
            }
            if offset != seq.raw_len + 1 {
                return Err(bad("offset does not follow the previous block"));
            }
            if let Some(&last) = seq.blocks.last() {
                if cmp_fraction(block, last) != Ordering::Greater {
                    return Err(bad("block fractions must be strictly increasing"));
                }
            }
            seq.append_block(block);
        }
        Ok(seq)
    }
}

impl Extend<bool> for BlockSequence {
    fn extend<T: IntoIterator<Item = bool>>(&mut self, iter: T) {
        for bit in iter {
            self.push(bit);
        }
    }
}
