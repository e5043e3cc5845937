//! Document-listing index.
//!
//! Documents are concatenated, each followed by a sentinel byte 0, and
//! indexed by a suffix array. The document array E (E[i] = document owning
//! suffix sa[i]) is stored as a wavelet tree, so listing the documents that
//! contain a pattern reduces to coloured range reporting on E over the
//! pattern's suffix-array interval.
//!
//! Pattern lookup is a binary search over the plain suffix array, O(|P| log n).

use crate::error::{Error, Result};
use crate::suffix::suffix_array;
use crate::wavelet_tree::WaveletTree;

/// Terminates every document in the concatenated text; documents and
/// patterns must not contain it.
pub const SENTINEL: u8 = 0;

/// Maximal suffix-array interval whose suffixes start with a pattern.
/// 1-indexed inclusive; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaInterval {
    pub lo: usize,
    pub hi: usize,
}

impl SaInterval {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Number of suffixes in the interval, which equals the total
    /// occurrence count of the pattern.
    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }
}

/// Concatenated text, suffix array, and wavelet tree over the document
/// array. Immutable after build.
pub struct DocIndex {
    text: Vec<u8>,
    /// Start offset (0-indexed) of each document in `text`.
    doc_boundaries: Vec<usize>,
    /// Suffix array over `text`, 0-indexed positions.
    sa: Vec<u32>,
    /// Wavelet tree over E[1..n], document ids 1..=k.
    e_tree: WaveletTree<u32>,
}

impl DocIndex {
    /// Concatenates the documents with sentinels, builds the suffix array
    /// and the wavelet tree over the document array.
    pub fn build<D: AsRef<[u8]>>(documents: &[D]) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::NoDocuments);
        }
        let mut text = Vec::new();
        let mut doc_boundaries = Vec::with_capacity(documents.len());
        for (i, doc) in documents.iter().enumerate() {
            let doc = doc.as_ref();
            if doc.contains(&SENTINEL) {
                return Err(Error::SentinelInDocument { doc: i + 1 });
            }
            doc_boundaries.push(text.len());
            text.extend_from_slice(doc);
            text.push(SENTINEL);
        }

        let sa = suffix_array(&text);

        // Suffixes starting at a sentinel belong to the document they
        // terminate; they can never match a sentinel-free pattern.
        let mut doc_of = vec![0u32; text.len()];
        for (d, &start) in doc_boundaries.iter().enumerate() {
            let end = doc_boundaries
                .get(d + 1)
                .copied()
                .unwrap_or(text.len());
            for slot in &mut doc_of[start..end] {
                *slot = (d + 1) as u32;
            }
        }
        let e: Vec<u32> = sa.iter().map(|&p| doc_of[p as usize]).collect();
        let e_tree = WaveletTree::build(&e)?;

        Ok(Self {
            text,
            doc_boundaries,
            sa,
            e_tree,
        })
    }

    pub(crate) fn from_parts(
        text: Vec<u8>,
        doc_boundaries: Vec<usize>,
        sa: Vec<u32>,
        e_tree: WaveletTree<u32>,
    ) -> Self {
        Self {
            text,
            doc_boundaries,
            sa,
            e_tree,
        }
    }

    pub fn doc_count(&self) -> usize {
        self.doc_boundaries.len()
    }

    /// Length of the concatenated text, sentinels included.
    pub fn text_len(&self) -> usize {
        self.text.len()
    }

    pub(crate) fn text(&self) -> &[u8] {
        &self.text
    }

    pub(crate) fn doc_boundaries(&self) -> &[usize] {
        &self.doc_boundaries
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    /// The wavelet tree over the document array.
    pub fn e_tree(&self) -> &WaveletTree<u32> {
        &self.e_tree
    }

    /// Bytes of document `id` (1-indexed), without the sentinel.
    pub fn document(&self, id: usize) -> Option<&[u8]> {
        let start = *self.doc_boundaries.get(id - 1)?;
        let end = self
            .doc_boundaries
            .get(id)
            .copied()
            .unwrap_or(self.text.len());
        Some(&self.text[start..end - 1])
    }

    fn check_pattern(&self, pattern: &[u8]) -> Result<()> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if pattern.contains(&SENTINEL) {
            return Err(Error::SentinelInPattern);
        }
        Ok(())
    }

    /// The maximal suffix-array interval whose suffixes have `pattern` as a
    /// prefix, by binary search. Empty interval when the pattern is absent.
    pub fn locate_pattern(&self, pattern: &[u8]) -> Result<SaInterval> {
        self.check_pattern(pattern)?;
        let cmp = |pos: u32| {
            let suffix = &self.text[pos as usize..];
            let m = suffix.len().min(pattern.len());
            match suffix[..m].cmp(&pattern[..m]) {
                std::cmp::Ordering::Equal if suffix.len() < pattern.len() => {
                    std::cmp::Ordering::Less
                }
                o => o,
            }
        };
        let first = self.sa.partition_point(|&p| cmp(p) == std::cmp::Ordering::Less);
        let last = self.sa.partition_point(|&p| cmp(p) != std::cmp::Ordering::Greater);
        Ok(SaInterval {
            lo: first + 1,
            hi: last,
        })
    }

    /// Documents containing `pattern`, in increasing id order, each with
    /// its occurrence count, via coloured range reporting on the document
    /// array.
    pub fn list_documents(&self, pattern: &[u8]) -> Result<Vec<(usize, usize)>> {
        let interval = self.locate_pattern(pattern)?;
        if interval.is_empty() {
            return Ok(Vec::new());
        }
        let items = self.e_tree.range_distinct(interval.lo, interval.hi)?;
        Ok(items
            .into_iter()
            .map(|d| (d.value as usize, d.multiplicity))
            .collect())
    }
}
