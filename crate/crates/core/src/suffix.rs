//! Suffix array construction by prefix doubling.

/// Builds the suffix array of `text`: a permutation of the 0-indexed
/// positions sorted by suffix order. O(n log^2 n) via sort-based prefix
/// doubling, with an early exit once all ranks are distinct.
pub fn suffix_array(text: &[u8]) -> Vec<u32> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.iter().map(|&b| b as u32).collect();
    let mut next_rank = vec![0u32; n];

    sa.sort_unstable_by_key(|&i| rank[i as usize]);
    let mut k = 1usize;
    loop {
        // Rank pair for position i: (rank[i], rank[i + k]), with positions
        // past the end sorting first.
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i));

        next_rank[sa[0] as usize] = 0;
        let mut distinct = 1u32;
        for w in 0..n - 1 {
            let (a, b) = (sa[w], sa[w + 1]);
            if key(a) != key(b) {
                distinct += 1;
            }
            next_rank[b as usize] = distinct - 1;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        if distinct as usize == n {
            break;
        }
        k *= 2;
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn naive_sa(text: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
        sa
    }

    #[test]
    fn empty_text() {
        assert!(suffix_array(b"").is_empty());
    }

    #[test]
    fn banana() {
        assert_eq!(suffix_array(b"banana"), naive_sa(b"banana"));
    }

    #[test]
    fn repeated_byte() {
        assert_eq!(suffix_array(&[7u8; 50]), naive_sa(&[7u8; 50]));
    }

    #[test]
    fn matches_comparison_sort_on_random_texts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=1000);
            let sigma: u8 = *[1u8, 2, 4, 26, 255].choose(&mut rng).unwrap();
            let text: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=sigma)).collect();
            assert_eq!(suffix_array(&text), naive_sa(&text));
        }
    }
}
