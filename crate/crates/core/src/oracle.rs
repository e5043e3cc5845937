//! Brute-force reference implementations.
//!
//! These are deliberately written as plain scans with no code shared with
//! the succinct structures, so a bug cannot cancel itself out. Property
//! tests and the CLI's `--check` mode compare against them.

use crate::error::{Error, Result};

fn check_range(len: usize, l: usize, r: usize) -> Result<()> {
    if l == 0 || l > r || r > len {
        return Err(Error::InvalidRange { lo: l, hi: r, len });
    }
    Ok(())
}

/// k-th smallest of a sorted copy of `s[l..=r]` (1-indexed, with
/// multiplicity).
pub fn naive_quantile<T: Ord + Copy>(s: &[T], k: usize, l: usize, r: usize) -> Result<T> {
    check_range(s.len(), l, r)?;
    if k == 0 || k > r - l + 1 {
        return Err(Error::InvalidRank { k, size: r - l + 1 });
    }
    let mut sub: Vec<T> = s[l - 1..r].to_vec();
    sub.sort_unstable();
    Ok(sub[k - 1])
}

/// Distinct values of `s[l..=r]` with counts, sorted by value.
pub fn naive_distinct<T: Ord + Copy>(s: &[T], l: usize, r: usize) -> Result<Vec<(T, usize)>> {
    check_range(s.len(), l, r)?;
    let mut sub: Vec<T> = s[l - 1..r].to_vec();
    sub.sort_unstable();
    let mut out: Vec<(T, usize)> = Vec::new();
    for v in sub {
        match out.last_mut() {
            Some((last, m)) if *last == v => *m += 1,
            _ => out.push((v, 1)),
        }
    }
    Ok(out)
}

/// Count of positions in `[l, r]` whose value lies in `[lo, hi]`.
pub fn naive_range_count<T: Ord + Copy>(
    s: &[T],
    l: usize,
    r: usize,
    lo: T,
    hi: T,
) -> Result<usize> {
    check_range(s.len(), l, r)?;
    if lo > hi {
        return Err(Error::InvalidSymbolBounds);
    }
    Ok(s[l - 1..r].iter().filter(|&&v| lo <= v && v <= hi).count())
}

/// Documents containing `pattern` with per-document occurrence counts
/// (overlapping occurrences included), by per-document substring scan.
/// Document ids are 1-indexed.
pub fn naive_doclist<D: AsRef<[u8]>>(
    documents: &[D],
    pattern: &[u8],
) -> Result<Vec<(usize, usize)>> {
    if documents.is_empty() {
        return Err(Error::NoDocuments);
    }
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.contains(&0) {
        return Err(Error::SentinelInPattern);
    }
    let mut out = Vec::new();
    for (i, doc) in documents.iter().enumerate() {
        let doc = doc.as_ref();
        if doc.len() < pattern.len() {
            continue;
        }
        let count = doc.windows(pattern.len()).filter(|w| *w == pattern).count();
        if count > 0 {
            out.push((i + 1, count));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_on_worked_example() {
        let s = [6u64, 2, 0, 7, 9, 3, 1, 8, 5, 4];
        assert_eq!(naive_quantile(&s, 5, 3, 9).unwrap(), 7);
        for i in 1..=s.len() {
            assert_eq!(naive_quantile(&s, 1, i, i).unwrap(), s[i - 1]);
        }
        assert!(naive_quantile(&s, 8, 3, 9).is_err());
    }

    #[test]
    fn distinct_scans() {
        let s: Vec<u8> = b"abracadabra".to_vec();
        assert_eq!(
            naive_distinct(&s, 4, 8).unwrap(),
            vec![(b'a', 3), (b'c', 1), (b'd', 1)]
        );
        assert_eq!(naive_distinct(&s, 5, 5).unwrap(), vec![(b'c', 1)]);
        assert_eq!(naive_distinct(&[5u32, 5, 5], 1, 3).unwrap(), vec![(5, 3)]);
    }

    #[test]
    fn range_count_scans() {
        let s = [6u64, 2, 0, 7, 9, 3, 1, 8, 5, 4];
        assert_eq!(naive_range_count(&s, 3, 9, 3, 7).unwrap(), 3);
        assert!(naive_range_count(&s, 3, 9, 7, 3).is_err());
    }

    #[test]
    fn doclist_scans() {
        let docs = ["abracadabra", "bandana", "cab"];
        assert_eq!(
            naive_doclist(&docs, b"ab").unwrap(),
            vec![(1, 2), (3, 1)]
        );
        assert_eq!(naive_doclist(&docs, b"an").unwrap(), vec![(2, 2)]);
        assert!(naive_doclist(&docs, b"z").unwrap().is_empty());
        assert!(naive_doclist(&docs, b"").is_err());
    }
}
