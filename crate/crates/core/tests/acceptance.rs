//! Acceptance suite. Each test exercises one release criterion end to end
//! and prints a PASS line (visible with `cargo test -- --nocapture`).

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use wtq::oracle::{naive_distinct, naive_doclist, naive_quantile, naive_range_count};
use wtq::{DocIndex, WaveletTree, WaveletTree64};

fn figure_seq() -> Vec<u64> {
    vec![6, 2, 0, 7, 9, 3, 1, 8, 5, 4]
}

fn check_worked_trace(wt: &WaveletTree64) {
    let (value, trace) = wt.quantile_trace(5, 3, 9).unwrap();
    assert_eq!(value, 7);
    let got: Vec<(usize, usize, usize)> = trace.iter().map(|t| (t.k, t.l, t.r)).collect();
    assert_eq!(got, vec![(5, 3, 9), (2, 2, 5), (2, 2, 3), (1, 1, 1)]);
}

fn check_root_bitstring(wt: &WaveletTree<u8>) {
    let root = wt.level(0).unwrap();
    let bits: String = (1..=wt.len())
        .map(|i| if root.access(i).unwrap() { '1' } else { '0' })
        .collect();
    assert_eq!(bits, "00100010010");
    let left_count = wt.alphabet().len().div_ceil(2);
    assert_eq!(&wt.alphabet().symbols()[..left_count], b"abc");
}

/// Oracle equivalence over 200 seeded random sequences: exhaustive quantile
/// and range_distinct, plus 10^4 random range_count queries in total.
/// `transform` lets the round-trip criterion re-run this on reloaded trees.
fn check_oracle_equivalence(transform: &dyn Fn(WaveletTree64) -> WaveletTree64) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut count_queries_left = 10_000usize;
    for case in 0..200 {
        let n = rng.gen_range(1..=64);
        let sigma = rng.gen_range(1..=16u64);
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let wt = transform(WaveletTree::build(&s).unwrap());
        for l in 1..=n {
            for r in l..=n {
                for k in 1..=r - l + 1 {
                    assert_eq!(
                        wt.quantile(k, l, r).unwrap(),
                        naive_quantile(&s, k, l, r).unwrap(),
                        "case {case}: quantile({k}, {l}, {r}) on {s:?}"
                    );
                }
                let got: Vec<(u64, usize)> = wt
                    .range_distinct(l, r)
                    .unwrap()
                    .iter()
                    .map(|d| (d.value, d.multiplicity))
                    .collect();
                assert_eq!(got, naive_distinct(&s, l, r).unwrap());
            }
        }
        let per_case = count_queries_left / (200 - case);
        for _ in 0..per_case {
            let l = rng.gen_range(1..=n);
            let r = rng.gen_range(l..=n);
            let a = rng.gen_range(0..=sigma + 2);
            let b = rng.gen_range(0..=sigma + 2);
            let (lo, hi) = (a.min(b), a.max(b));
            assert_eq!(
                wt.range_count(l, r, lo, hi).unwrap(),
                naive_range_count(&s, l, r, lo, hi).unwrap()
            );
        }
        count_queries_left -= per_case;
    }
}

/// A length-n sequence over exactly `sigma` distinct values, every value
/// guaranteed present.
fn dense_sequence(n: usize, sigma: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s: Vec<u64> = (0..n as u64)
        .map(|i| if i < sigma { i } else { rng.gen_range(0..sigma) })
        .collect();
    s.shuffle(&mut rng);
    s
}

fn mean_quantile_ns(wt: &WaveletTree64, queries: &[(usize, usize, usize)]) -> f64 {
    let start = Instant::now();
    let mut acc = 0u64;
    for &(k, l, r) in queries {
        acc = acc.wrapping_add(wt.quantile(k, l, r).unwrap());
    }
    std::hint::black_box(acc);
    start.elapsed().as_nanos() as f64 / queries.len() as f64
}

#[test]
fn c1_quantile_trace_worked_example() {
    let wt = WaveletTree::build(&figure_seq()).unwrap();
    check_worked_trace(&wt);
    println!("PASS: quantile trace on the 10-element worked example");
}

#[test]
fn c2_root_bitstring_worked_example() {
    let wt = WaveletTree::build(b"abracadabra".as_slice()).unwrap();
    check_root_bitstring(&wt);
    println!("PASS: root bit string and left alphabet on the text example");
}

#[test]
fn c3_oracle_equivalence_exhaustive() {
    check_oracle_equivalence(&|wt| wt);
    println!("PASS: exhaustive oracle equivalence over 200 random sequences");
}

#[test]
fn c4_space_bound() {
    let n = 1_000_000usize;
    let s = dense_sequence(n, 256, 7);
    let wt = WaveletTree::build(&s).unwrap();
    assert_eq!(wt.alphabet().len(), 256);
    assert_eq!(wt.stored_bits(), n * 8, "level bits must equal n log sigma");

    let mut buf = Vec::new();
    wt.serialize_into(&mut buf).unwrap();
    let total_bits = buf.len() * 8 + wt.rank_directory_bits();
    assert!(
        total_bits as f64 <= 1.5 * (n * 8) as f64,
        "serialized index + rank overhead = {total_bits} bits exceeds 1.5 * n log sigma"
    );
    println!(
        "PASS: space bound (stored {} bits, with overhead {} <= {} bits)",
        wt.stored_bits(),
        total_bits,
        n * 12
    );
}

#[test]
fn c5_query_time_scaling() {
    let n = 1_000_000usize;
    let queries: Vec<(usize, usize, usize)> = {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        (0..100_000)
            .map(|_| {
                let l = rng.gen_range(1..=n);
                let r = rng.gen_range(l..=n);
                let k = rng.gen_range(1..=r - l + 1);
                (k, l, r)
            })
            .collect()
    };

    let small = WaveletTree::build(&dense_sequence(n, 16, 1)).unwrap();
    let large = WaveletTree::build(&dense_sequence(n, 4096, 2)).unwrap();
    // Warm up both trees before timing.
    mean_quantile_ns(&small, &queries[..1000]);
    mean_quantile_ns(&large, &queries[..1000]);
    // Minimum over several interleaved repetitions, so that other tests
    // running in parallel cannot skew one side of the ratio.
    let mut t_small = f64::INFINITY;
    let mut t_large = f64::INFINITY;
    for _ in 0..5 {
        t_small = t_small.min(mean_quantile_ns(&small, &queries));
        t_large = t_large.min(mean_quantile_ns(&large, &queries));
    }
    let ratio = t_large / t_small;
    println!(
        "query-time scaling: sigma=16 {t_small:.1} ns, sigma=4096 {t_large:.1} ns, ratio {ratio:.2}"
    );
    assert!(
        ratio <= 4.5,
        "latency ratio {ratio:.2} exceeds 4.5 (depths 12 vs 4)"
    );
    println!("PASS: query-time scaling ratio {ratio:.2} <= 4.5");
}

#[test]
fn c6_document_listing() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for corpus_id in 0..50 {
        let doc_count = rng.gen_range(1..=100);
        let mut docs: Vec<Vec<u8>> = Vec::with_capacity(doc_count);
        let mut budget = 10_000usize;
        let alphabet = rng.gen_range(2..=5u8);
        for _ in 0..doc_count {
            let len = rng.gen_range(0..=200.min(budget));
            budget -= len;
            docs.push((0..len).map(|_| rng.gen_range(b'a'..b'a' + alphabet)).collect());
        }
        let idx = DocIndex::build(&docs).unwrap();

        for _ in 0..1000 {
            // Half the patterns are substrings drawn from the corpus.
            let pattern: Vec<u8> = if rng.gen_bool(0.5) {
                let candidates: Vec<&Vec<u8>> =
                    docs.iter().filter(|d| !d.is_empty()).collect();
                match candidates.choose(&mut rng) {
                    Some(doc) => {
                        let start = rng.gen_range(0..doc.len());
                        let len = rng.gen_range(1..=16.min(doc.len() - start));
                        doc[start..start + len].to_vec()
                    }
                    None => vec![b'a'],
                }
            } else {
                let len = rng.gen_range(1..=16);
                (0..len).map(|_| rng.gen_range(b'a'..b'a' + alphabet)).collect()
            };

            idx.e_tree().reset_descent_count();
            let got = idx.list_documents(&pattern).unwrap();
            let expected = naive_doclist(&docs, &pattern).unwrap();
            assert_eq!(got, expected, "corpus {corpus_id}, pattern {pattern:?}");

            let interval = idx.locate_pattern(&pattern).unwrap();
            assert_eq!(
                got.iter().map(|&(_, c)| c).sum::<usize>(),
                interval.len(),
                "interval length must equal the total occurrence count"
            );
            // Distinct enumeration must stay within 2*ndoc + 1 descents.
            let ndoc = got.len() as u64;
            assert!(
                idx.e_tree().descent_count() <= 2 * ndoc + 1,
                "corpus {corpus_id}: {} descents for ndoc = {ndoc}",
                idx.e_tree().descent_count()
            );
        }
    }
    println!("PASS: document listing matches the naive scan on 50 corpora");
}

#[test]
fn c7_serialization_round_trip() {
    // Criterion 1 on a reloaded tree.
    let wt = WaveletTree::build(&figure_seq()).unwrap();
    let mut buf = Vec::new();
    wt.serialize_into(&mut buf).unwrap();
    let loaded = WaveletTree64::deserialize_from(&mut buf.as_slice()).unwrap();
    check_worked_trace(&loaded);

    // Criterion 2 on a reloaded tree.
    let wt = WaveletTree::build(b"abracadabra".as_slice()).unwrap();
    let mut buf = Vec::new();
    wt.serialize_into(&mut buf).unwrap();
    let loaded = WaveletTree::<u8>::deserialize_from(&mut buf.as_slice()).unwrap();
    check_root_bitstring(&loaded);

    // Criterion 3 with every tree passed through a save/load cycle.
    check_oracle_equivalence(&|wt| {
        let mut buf = Vec::new();
        wt.serialize_into(&mut buf).unwrap();
        WaveletTree64::deserialize_from(&mut buf.as_slice()).unwrap()
    });
    println!("PASS: save/load round trip preserves all answers");
}
