//! Packed bit sequences with a sampled rank directory.
//!
//! `BitVector` stores bits in 64-bit words plus one cumulative 1-count per
//! 512-bit block, giving O(1) rank and O(log n) select. All public positions
//! are 1-indexed; rank takes a prefix length in `0..=len`.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;
/// Rank directory block size in bits. One u64 cumulative count per block,
/// so the directory overhead is 64/512 = 12.5% of the raw bits.
pub const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / WORD_BITS;

/// Append-only packed bit buffer, finished into a [`BitVector`].
#[derive(Default)]
pub struct BitBuffer {
    words: Vec<u64>,
    len: usize,
}

impl BitBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD_BITS] |= 1u64 << (self.len % WORD_BITS);
        }
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn finish(self) -> BitVector {
        BitVector::from_raw_parts(self.words, self.len)
    }
}

/// An immutable bit sequence with a rank directory.
#[derive(Debug, Clone)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
    /// rank_dir[t] = number of 1s among bits [0, t * BLOCK_BITS).
    rank_dir: Vec<u64>,
    ones: usize,
}

impl BitVector {
    /// Builds from a sequence of booleans. Empty input is legal.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut buf = BitBuffer::new();
        for b in bits {
            buf.push(b);
        }
        buf.finish()
    }

    /// Builds from packed little-endian words. Bits at or beyond `len` are
    /// cleared; the rank directory is (re)built from scratch.
    pub fn from_raw_parts(mut words: Vec<u64>, len: usize) -> Self {
        let needed = len.div_ceil(WORD_BITS);
        words.truncate(needed);
        words.resize(needed, 0);
        if !len.is_multiple_of(WORD_BITS) {
            let mask = (1u64 << (len % WORD_BITS)) - 1;
            *words.last_mut().unwrap() &= mask;
        }

        let blocks = len / BLOCK_BITS;
        let mut rank_dir = Vec::with_capacity(blocks + 1);
        let mut acc = 0u64;
        rank_dir.push(0);
        for t in 0..blocks {
            for w in &words[t * WORDS_PER_BLOCK..(t + 1) * WORDS_PER_BLOCK] {
                acc += w.count_ones() as u64;
            }
            rank_dir.push(acc);
        }
        let ones = words.iter().map(|w| w.count_ones() as usize).sum();
        Self {
            words,
            len,
            rank_dir,
            ones,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Total number of 1-bits.
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Raw packed words (tail bits beyond `len` are zero).
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Size of the rank directory in bits, on top of the raw words.
    pub fn rank_directory_bits(&self) -> usize {
        self.rank_dir.len() * WORD_BITS
    }

    /// Number of 1s among the first `i` bits (`0 <= i <= len`; `i = 0` is the
    /// empty prefix).
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::OutOfRange {
                pos: i,
                len: self.len,
            });
        }
        Ok(self.rank1_raw(i))
    }

    /// Number of 0s among the first `i` bits.
    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    /// The `i`-th bit, 1-indexed.
    pub fn access(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfRange {
                pos: i,
                len: self.len,
            });
        }
        Ok(self.access_raw(i - 1))
    }

    /// Position (1-indexed) of the `j`-th 1-bit, by binary search over the
    /// rank directory plus an in-block scan.
    pub fn select1(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.ones {
            return Err(Error::RankOutOfRange {
                rank: j,
                total: self.ones,
            });
        }
        Ok(self.select1_raw(j) + 1)
    }

    /// Position (1-indexed) of the `j`-th 0-bit.
    pub fn select0(&self, j: usize) -> Result<usize> {
        let zeros = self.len - self.ones;
        if j == 0 || j > zeros {
            return Err(Error::RankOutOfRange {
                rank: j,
                total: zeros,
            });
        }
        Ok(self.select0_raw(j) + 1)
    }

    #[inline]
    pub(crate) fn rank1_raw(&self, i: usize) -> usize {
        let block = i / BLOCK_BITS;
        let mut r = self.rank_dir[block] as usize;
        let full_words = i / WORD_BITS;
        for w in &self.words[block * WORDS_PER_BLOCK..full_words] {
            r += w.count_ones() as usize;
        }
        let rem = i % WORD_BITS;
        if rem > 0 {
            r += (self.words[full_words] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub(crate) fn rank0_raw(&self, i: usize) -> usize {
        i - self.rank1_raw(i)
    }

    #[inline]
    pub(crate) fn access_raw(&self, i0: usize) -> bool {
        (self.words[i0 / WORD_BITS] >> (i0 % WORD_BITS)) & 1 == 1
    }

    /// 0-indexed position of the `j`-th 1-bit. Caller guarantees
    /// `1 <= j <= ones`.
    pub(crate) fn select1_raw(&self, j: usize) -> usize {
        // Last block whose cumulative count is below j.
        let block = self.rank_dir.partition_point(|&c| (c as usize) < j) - 1;
        let mut remaining = j - self.rank_dir[block] as usize;
        let mut word = block * WORDS_PER_BLOCK;
        loop {
            let ones = self.words[word].count_ones() as usize;
            if ones >= remaining {
                break;
            }
            remaining -= ones;
            word += 1;
        }
        word * WORD_BITS + select_in_word(self.words[word], remaining)
    }

    /// 0-indexed position of the `j`-th 0-bit.
    pub(crate) fn select0_raw(&self, j: usize) -> usize {
        // Last block whose preceding zero count is below j.
        let zeros_before = |t: usize| t * BLOCK_BITS - self.rank_dir[t] as usize;
        let mut lo = 0;
        let mut hi = self.rank_dir.len();
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if zeros_before(mid) < j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let block = lo;
        let mut remaining = j - (block * BLOCK_BITS - self.rank_dir[block] as usize);
        let mut word = block * WORDS_PER_BLOCK;
        loop {
            let in_word_bits = (self.len - word * WORD_BITS).min(WORD_BITS);
            let zeros = in_word_bits - self.words[word].count_ones() as usize;
            if zeros >= remaining {
                break;
            }
            remaining -= zeros;
            word += 1;
        }
        // Invert only the valid bits of the word before scanning.
        let in_word_bits = (self.len - word * WORD_BITS).min(WORD_BITS);
        let mask = if in_word_bits == WORD_BITS {
            u64::MAX
        } else {
            (1u64 << in_word_bits) - 1
        };
        word * WORD_BITS + select_in_word(!self.words[word] & mask, remaining)
    }
}

/// Bit index (0..63) of the `j`-th set bit of `w`. Caller guarantees `w` has
/// at least `j >= 1` set bits.
#[inline]
fn select_in_word(mut w: u64, mut j: usize) -> usize {
    loop {
        let t = w.trailing_zeros() as usize;
        j -= 1;
        if j == 0 {
            return t;
        }
        w &= w - 1;
    }
}
