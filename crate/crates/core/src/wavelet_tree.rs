//! Balanced wavelet tree over an integer sequence.
//!
//! The tree is stored levelwise: all node bit strings of one depth are
//! concatenated into a single [`BitVector`], and node intervals are
//! recomputed during descent from rank values alone. Each node routes the
//! first `ceil(t/2)` of its `t` distinct symbols to the left child. Symbols
//! are coordinate-compressed through an [`AlphabetMap`] at build time, so
//! queries accept the original (arbitrary unsigned) values.
//!
//! All public positions and ranks are 1-indexed; prefix ranks accept 0 for
//! the empty prefix.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::bitvector::{BitBuffer, BitVector};
use crate::error::{Error, Result};
use crate::Symbol;

/// Sorted table of the distinct symbols of a sequence.
///
/// Codes are 1-indexed: `code(v)` is the position of `v` in the sorted table
/// and `decode` inverts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphabetMap<S> {
    distinct: Vec<S>,
}

impl<S: Symbol> AlphabetMap<S> {
    pub fn from_sequence(s: &[S]) -> Self {
        let mut distinct = s.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        Self { distinct }
    }

    /// Builds from an already sorted, deduplicated table.
    pub(crate) fn from_sorted(distinct: Vec<S>) -> Result<Self> {
        if !distinct.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Format("alphabet table not strictly increasing".into()));
        }
        Ok(Self { distinct })
    }

    /// Number of distinct symbols.
    pub fn len(&self) -> usize {
        self.distinct.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distinct.is_empty()
    }

    /// 1-indexed code of `v`, or `None` when `v` never occurred.
    pub fn code(&self, v: S) -> Option<usize> {
        self.distinct.binary_search(&v).ok().map(|i| i + 1)
    }

    /// Symbol for a 1-indexed code.
    pub fn decode(&self, code: usize) -> Option<S> {
        if code == 0 {
            return None;
        }
        self.distinct.get(code - 1).copied()
    }

    /// The sorted distinct symbols.
    pub fn symbols(&self) -> &[S] {
        &self.distinct
    }

    /// 0-indexed code range covering all symbols in `[lo, hi]`, or `None`
    /// when no symbol falls in the bounds.
    fn code_range(&self, lo: S, hi: S) -> Option<(usize, usize)> {
        let clo = self.distinct.partition_point(|&v| v < lo);
        let chi = self.distinct.partition_point(|&v| v <= hi);
        if clo < chi {
            Some((clo, chi - 1))
        } else {
            None
        }
    }

    fn code0(&self, v: S) -> Option<usize> {
        self.distinct.binary_search(&v).ok()
    }
}

/// One step of the quantile descent: the residual rank and the query
/// interval inside the current node's subsequence (1-indexed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantileTraceStep {
    pub k: usize,
    pub l: usize,
    pub r: usize,
}

/// A distinct value of a queried range together with its occurrence count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistinctItem<S> {
    pub value: S,
    pub multiplicity: usize,
}

/// A node interval during descent: its position range inside the level
/// bitvector and its 0-indexed code range.
#[derive(Debug, Clone, Copy)]
struct Node {
    start: usize,
    len: usize,
    lo: usize,
    hi: usize,
}

impl Node {
    #[inline]
    fn is_leaf(&self) -> bool {
        self.lo == self.hi
    }

    /// Highest code routed to the left child: the first `ceil(t/2)` symbols
    /// go left.
    #[inline]
    fn left_hi(&self) -> usize {
        let t = self.hi - self.lo + 1;
        self.lo + t.div_ceil(2) - 1
    }
}

/// Balanced wavelet tree supporting access, symbol rank/select, range
/// quantile, range counting, and coloured range reporting, all in
/// O(log sigma) bitvector operations.
pub struct WaveletTree<S> {
    n: usize,
    alphabet: AlphabetMap<S>,
    /// One bitvector per depth; single-symbol (leaf) nodes carry zero bits
    /// through the remaining levels so that child offsets follow from rank
    /// values alone.
    levels: Vec<BitVector>,
    /// Root-to-leaf walks performed by quantile, symbol_count, prefix_rank
    /// and select since the last reset.
    descents: AtomicU64,
}

impl<S: Symbol> WaveletTree<S> {
    /// Builds the tree with one stable partition pass per level,
    /// O(n log sigma) total.
    pub fn build(s: &[S]) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptySequence);
        }
        let alphabet = AlphabetMap::from_sequence(s);
        let sigma = alphabet.len();
        let depth = ceil_log2(sigma);

        let mut codes: Vec<usize> = s
            .iter()
            .map(|&v| alphabet.code0(v).expect("symbol drawn from s"))
            .collect();
        let mut nodes = vec![Node {
            start: 0,
            len: codes.len(),
            lo: 0,
            hi: sigma - 1,
        }];

        let mut levels = Vec::with_capacity(depth);
        for _ in 0..depth {
            let mut bits = BitBuffer::new();
            let mut next_codes = Vec::with_capacity(codes.len());
            let mut next_nodes = Vec::with_capacity(nodes.len() * 2);
            for node in &nodes {
                let seg = &codes[node.start..node.start + node.len];
                if node.is_leaf() {
                    for _ in seg {
                        bits.push(false);
                    }
                    next_nodes.push(Node {
                        start: next_codes.len(),
                        ..*node
                    });
                    next_codes.extend_from_slice(seg);
                    continue;
                }
                let left_hi = node.left_hi();
                for &c in seg {
                    bits.push(c > left_hi);
                }
                let left_start = next_codes.len();
                next_codes.extend(seg.iter().copied().filter(|&c| c <= left_hi));
                let right_start = next_codes.len();
                next_codes.extend(seg.iter().copied().filter(|&c| c > left_hi));
                next_nodes.push(Node {
                    start: left_start,
                    len: right_start - left_start,
                    lo: node.lo,
                    hi: left_hi,
                });
                next_nodes.push(Node {
                    start: right_start,
                    len: next_codes.len() - right_start,
                    lo: left_hi + 1,
                    hi: node.hi,
                });
            }
            levels.push(bits.finish());
            codes = next_codes;
            nodes = next_nodes;
        }

        Ok(Self {
            n: s.len(),
            alphabet,
            levels,
            descents: AtomicU64::new(0),
        })
    }

    pub(crate) fn from_parts(
        n: usize,
        alphabet: AlphabetMap<S>,
        levels: Vec<BitVector>,
    ) -> Self {
        Self {
            n,
            alphabet,
            levels,
            descents: AtomicU64::new(0),
        }
    }

    /// Sequence length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn alphabet(&self) -> &AlphabetMap<S> {
        &self.alphabet
    }

    /// Tree depth, `ceil(log2 sigma)`.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// The concatenated node bit strings at one depth.
    pub fn level(&self, d: usize) -> Option<&BitVector> {
        self.levels.get(d)
    }

    /// Total bits stored across all levels.
    pub fn stored_bits(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    /// Total rank-directory bits across all levels.
    pub fn rank_directory_bits(&self) -> usize {
        self.levels.iter().map(|l| l.rank_directory_bits()).sum()
    }

    /// Root-to-leaf descents performed since the last reset.
    pub fn descent_count(&self) -> u64 {
        self.descents.load(Ordering::Relaxed)
    }

    pub fn reset_descent_count(&self) {
        self.descents.store(0, Ordering::Relaxed);
    }

    fn root(&self) -> Node {
        Node {
            start: 0,
            len: self.n,
            lo: 0,
            hi: self.alphabet.len() - 1,
        }
    }

    /// Zeros among the first `p` positions of `node` at level `d`.
    #[inline]
    fn node_zeros(&self, d: usize, node: &Node, p: usize) -> usize {
        let bv = &self.levels[d];
        bv.rank0_raw(node.start + p) - bv.rank0_raw(node.start)
    }

    fn check_pos(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfRange {
                pos: i,
                len: self.n,
            });
        }
        Ok(())
    }

    fn check_range(&self, l: usize, r: usize) -> Result<()> {
        if l == 0 || l > r || r > self.n {
            return Err(Error::InvalidRange {
                lo: l,
                hi: r,
                len: self.n,
            });
        }
        Ok(())
    }

    /// Reconstructs `s[i]` by following position `i` down the tree.
    pub fn access(&self, i: usize) -> Result<S> {
        self.check_pos(i)?;
        let mut node = self.root();
        let mut p = i;
        let mut d = 0;
        while !node.is_leaf() {
            let bv = &self.levels[d];
            let zeros = self.node_zeros(d, &node, p);
            let left_len = self.node_zeros(d, &node, node.len);
            if bv.access_raw(node.start + p - 1) {
                p -= zeros;
                node = Node {
                    start: node.start + left_len,
                    len: node.len - left_len,
                    lo: node.left_hi() + 1,
                    hi: node.hi,
                };
            } else {
                p = zeros;
                node = Node {
                    start: node.start,
                    len: left_len,
                    lo: node.lo,
                    hi: node.left_hi(),
                };
            }
            d += 1;
        }
        Ok(self.alphabet.decode(node.lo + 1).expect("leaf code valid"))
    }

    /// Occurrences of `c` among `s[1..=i]`; 0 when `c` is not in the
    /// alphabet.
    pub fn prefix_rank(&self, c: S, i: usize) -> Result<usize> {
        if i > self.n {
            return Err(Error::OutOfRange {
                pos: i,
                len: self.n,
            });
        }
        let Some(code) = self.alphabet.code0(c) else {
            return Ok(0);
        };
        self.descents.fetch_add(1, Ordering::Relaxed);
        let (_, hi) = self.prefix_rank_code(code, 0, i);
        Ok(hi)
    }

    /// Occurrences of `c` in `s[l..=r]`, one descent carrying both prefix
    /// endpoints.
    pub fn symbol_count(&self, c: S, l: usize, r: usize) -> Result<usize> {
        self.check_range(l, r)?;
        let Some(code) = self.alphabet.code0(c) else {
            return Ok(0);
        };
        self.descents.fetch_add(1, Ordering::Relaxed);
        let (before, through) = self.prefix_rank_code(code, l - 1, r);
        Ok(through - before)
    }

    /// Descends to `code`'s leaf mapping two prefix lengths simultaneously.
    fn prefix_rank_code(&self, code: usize, mut i1: usize, mut i2: usize) -> (usize, usize) {
        let mut node = self.root();
        let mut d = 0;
        while !node.is_leaf() {
            let z1 = self.node_zeros(d, &node, i1);
            let z2 = self.node_zeros(d, &node, i2);
            let left_len = self.node_zeros(d, &node, node.len);
            if code <= node.left_hi() {
                i1 = z1;
                i2 = z2;
                node = Node {
                    start: node.start,
                    len: left_len,
                    lo: node.lo,
                    hi: node.left_hi(),
                };
            } else {
                i1 -= z1;
                i2 -= z2;
                node = Node {
                    start: node.start + left_len,
                    len: node.len - left_len,
                    lo: node.left_hi() + 1,
                    hi: node.hi,
                };
            }
            d += 1;
        }
        (i1, i2)
    }

    /// Position of the `j`-th occurrence of `c`: descend to `c`'s leaf, then
    /// walk back up with bitvector select.
    pub fn select(&self, c: S, j: usize) -> Result<usize> {
        let Some(code) = self.alphabet.code0(c) else {
            return Err(Error::UnknownSymbol);
        };
        if j == 0 {
            return Err(Error::RankOutOfRange { rank: j, total: 0 });
        }
        self.descents.fetch_add(1, Ordering::Relaxed);

        let mut node = self.root();
        let mut d = 0;
        let mut path: Vec<(usize, usize, bool)> = Vec::with_capacity(self.depth());
        while !node.is_leaf() {
            let left_len = self.node_zeros(d, &node, node.len);
            let right = code > node.left_hi();
            path.push((d, node.start, right));
            node = if right {
                Node {
                    start: node.start + left_len,
                    len: node.len - left_len,
                    lo: node.left_hi() + 1,
                    hi: node.hi,
                }
            } else {
                Node {
                    start: node.start,
                    len: left_len,
                    lo: node.lo,
                    hi: node.left_hi(),
                }
            };
            d += 1;
        }
        if j > node.len {
            return Err(Error::RankOutOfRange {
                rank: j,
                total: node.len,
            });
        }

        let mut pos = j;
        for &(d, start, right) in path.iter().rev() {
            let bv = &self.levels[d];
            pos = if right {
                bv.select1_raw(bv.rank1_raw(start) + pos) - start + 1
            } else {
                bv.select0_raw(bv.rank0_raw(start) + pos) - start + 1
            };
        }
        Ok(pos)
    }

    /// The `k`-th smallest value (with multiplicity) of the multiset
    /// `s[l..=r]`, one root-to-leaf descent with two rank queries per level.
    pub fn quantile(&self, k: usize, l: usize, r: usize) -> Result<S> {
        self.quantile_core(k, l, r, None)
    }

    /// As [`quantile`](Self::quantile), additionally returning the
    /// per-level `(k, l, r)` triples, starting with the input triple.
    pub fn quantile_trace(&self, k: usize, l: usize, r: usize) -> Result<(S, Vec<QuantileTraceStep>)> {
        let mut trace = Vec::with_capacity(self.depth() + 1);
        let v = self.quantile_core(k, l, r, Some(&mut trace))?;
        Ok((v, trace))
    }

    fn quantile_core(
        &self,
        mut k: usize,
        mut l: usize,
        mut r: usize,
        mut trace: Option<&mut Vec<QuantileTraceStep>>,
    ) -> Result<S> {
        self.check_range(l, r)?;
        if k == 0 || k > r - l + 1 {
            return Err(Error::InvalidRank {
                k,
                size: r - l + 1,
            });
        }
        self.descents.fetch_add(1, Ordering::Relaxed);

        let mut node = self.root();
        let mut d = 0;
        loop {
            if let Some(t) = trace.as_deref_mut() {
                t.push(QuantileTraceStep { k, l, r });
            }
            if node.is_leaf() {
                return Ok(self.alphabet.decode(node.lo + 1).expect("leaf code valid"));
            }
            let zeros_before = self.node_zeros(d, &node, l - 1);
            let zeros_through = self.node_zeros(d, &node, r);
            let zeros_in_range = zeros_through - zeros_before;
            let left_len = self.node_zeros(d, &node, node.len);
            if zeros_in_range >= k {
                l = zeros_before + 1;
                r = zeros_through;
                node = Node {
                    start: node.start,
                    len: left_len,
                    lo: node.lo,
                    hi: node.left_hi(),
                };
            } else {
                k -= zeros_in_range;
                l = (l - 1 - zeros_before) + 1;
                r -= zeros_through;
                node = Node {
                    start: node.start + left_len,
                    len: node.len - left_len,
                    lo: node.left_hi() + 1,
                    hi: node.hi,
                };
            }
            d += 1;
        }
    }

    /// Number of positions `j` in `[l, r]` with `lo <= s[j] <= hi`. The
    /// bounds need not be alphabet members.
    pub fn range_count(&self, l: usize, r: usize, lo: S, hi: S) -> Result<usize> {
        self.check_range(l, r)?;
        if lo > hi {
            return Err(Error::InvalidSymbolBounds);
        }
        let Some((clo, chi)) = self.alphabet.code_range(lo, hi) else {
            return Ok(0);
        };
        Ok(self.count_rec(0, self.root(), l, r, clo, chi))
    }

    fn count_rec(&self, d: usize, node: Node, l: usize, r: usize, clo: usize, chi: usize) -> usize {
        if l > r || node.hi < clo || chi < node.lo {
            return 0;
        }
        if clo <= node.lo && node.hi <= chi {
            return r - l + 1;
        }
        let zeros_before = self.node_zeros(d, &node, l - 1);
        let zeros_through = self.node_zeros(d, &node, r);
        let left_len = self.node_zeros(d, &node, node.len);
        let left = Node {
            start: node.start,
            len: left_len,
            lo: node.lo,
            hi: node.left_hi(),
        };
        let right = Node {
            start: node.start + left_len,
            len: node.len - left_len,
            lo: node.left_hi() + 1,
            hi: node.hi,
        };
        self.count_rec(d + 1, left, zeros_before + 1, zeros_through, clo, chi)
            + self.count_rec(
                d + 1,
                right,
                l - zeros_before,
                r - zeros_through,
                clo,
                chi,
            )
    }

    /// All distinct values of `s[l..=r]` in increasing order with their
    /// multiplicities: repeated quantile at ranks 1, 1+m1, 1+m1+m2, ...,
    /// each multiplicity from one symbol_count descent. O(d log sigma) for
    /// d distinct values.
    pub fn range_distinct(&self, l: usize, r: usize) -> Result<Vec<DistinctItem<S>>> {
        self.check_range(l, r)?;
        let size = r - l + 1;
        let mut out = Vec::new();
        let mut next_rank = 1;
        while next_rank <= size {
            let value = self.quantile(next_rank, l, r)?;
            let multiplicity = self.symbol_count(value, l, r)?;
            out.push(DistinctItem {
                value,
                multiplicity,
            });
            next_rank += multiplicity;
        }
        Ok(out)
    }
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    debug_assert!(x > 0);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}
