//! Property tests across modules: the optimizers against brute force, the
//! codec round trip, and the structural guarantees of emitted codes.

mod common;

use std::collections::HashSet;

use fwcodec::baseline::{huffman, huffman_pair_success, huffman_shared_success};
use fwcodec::codebook::{canonical_prefix_from_lengths, universal_second_code};
use fwcodec::opt_pair::optimal_pair_scheme;
use fwcodec::opt_shared::optimal_shared_code;
use fwcodec::oracle::{
    brute_force_optimal_pair, brute_force_optimal_shared, enumerate_monotone_vectors, KraftMode,
    DEFAULT_CAP,
};
use fwcodec::{
    success_probability, ElementDistribution, EntryDistribution, EntryScheme, LengthVector,
};
use proptest::prelude::*;

fn distribution(max_n: usize) -> impl Strategy<Value = ElementDistribution> {
    distribution_between(1, max_n)
}

fn distribution_between(min_n: usize, max_n: usize) -> impl Strategy<Value = ElementDistribution> {
    prop::collection::vec(0.01f64..1.0, min_n..=max_n).prop_map(|w| {
        let total: f64 = w.iter().sum();
        ElementDistribution::from_probs(w.iter().map(|x| x / total).collect()).unwrap()
    })
}

/// Kraft-feasible lengths in `1..=max`, possibly with gaps.
fn prefix_lengths(n: usize, max: u32) -> impl Strategy<Value = LengthVector> {
    prop::collection::vec(prop::option::weighted(0.9, 1..=max), n).prop_map(move |raw| {
        let mut budget = 1u64 << max;
        LengthVector::new(
            raw.into_iter()
                .map(|len| {
                    len.filter(|&l| {
                        let w = 1u64 << (max - l);
                        let fits = w <= budget;
                        if fits {
                            budget -= w;
                        }
                        fits
                    })
                })
                .collect(),
        )
    })
}

fn scheme() -> impl Strategy<Value = EntryScheme> {
    (1usize..=10, 1usize..=10, 1u32..=14, any::<bool>())
        .prop_flat_map(|(n1, n2, width, universal)| {
            (
                prefix_lengths(n1, width),
                prefix_lengths(n2, width),
                Just(n2),
                Just(width),
                Just(universal),
            )
        })
        .prop_map(|(l1, l2, n2, width, universal)| {
            let first = canonical_prefix_from_lengths(&l1).unwrap();
            let second = if universal {
                universal_second_code(n2)
            } else {
                canonical_prefix_from_lengths(&l2).unwrap()
            };
            EntryScheme::new(first, second, width).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pair_optimum_matches_brute_force(
        d1 in distribution(6),
        d2 in distribution(6),
        width in 1u32..=6,
    ) {
        let dist = EntryDistribution::new(d1, d2);
        let dp = optimal_pair_scheme(&dist, width, false).unwrap();
        let (_, _, brute) = brute_force_optimal_pair(&dist, width).unwrap();
        prop_assert!((dp.p_success - brute).abs() < 1e-9, "dp {} brute {}", dp.p_success, brute);
        let direct = dp.scheme.success_probability(&dist).unwrap();
        prop_assert!((dp.p_success - direct).abs() < 1e-9);
        prop_assert!(dp.p_success >= huffman_pair_success(&dist, width).unwrap() - 1e-12);
    }

    #[test]
    fn shared_optimum_matches_brute_force(d in distribution(8), width in 2u32..=7) {
        let dp = optimal_shared_code(&d, width).unwrap();
        let (_, brute) = brute_force_optimal_shared(&d, width).unwrap();
        prop_assert!((dp.p_success - brute).abs() < 1e-9, "dp {} brute {}", dp.p_success, brute);
        prop_assert!(dp.code.is_prefix());
        prop_assert!(dp.lengths.assigned().all(|l| l < width));
        prop_assert!(dp.p_success >= huffman_shared_success(&d, width).unwrap() - 1e-12);
    }

    #[test]
    fn codec_round_trip_and_injectivity(scheme in scheme(), picks in prop::collection::vec((0usize..10, 0usize..10), 20)) {
        let (n1, n2) = (scheme.first().len(), scheme.second().len());
        let mut seen = HashSet::new();
        for i in 0..n1 {
            for j in 0..n2 {
                if let Some(word) = scheme.encode(i, j).unwrap() {
                    prop_assert!(seen.insert(word), "collision at {}", word);
                    prop_assert_eq!(scheme.decode(&word).unwrap(), (i, j));
                }
            }
        }
        for (i, j) in picks {
            let (i, j) = (i % n1, j % n2);
            let fits = matches!(
                (scheme.first().word(i), scheme.second().word(j)),
                (Some(a), Some(b)) if a.len() + b.len() <= scheme.width()
            );
            prop_assert_eq!(scheme.encode(i, j).unwrap().is_some(), fits);
        }
    }

    #[test]
    fn huffman_is_minimal_among_complete_codes(d in distribution_between(2, 8)) {
        let h = huffman(&d);
        let set = enumerate_monotone_vectors(d.len(), d.len() as u32, KraftMode::Equality, DEFAULT_CAP).unwrap();
        let best = set
            .vectors
            .iter()
            .map(|v| v.iter().zip(d.probs()).map(|(&l, p)| l as f64 * p).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        prop_assert!((h.expected_length - best).abs() < 1e-9);
    }

    #[test]
    fn success_is_monotone_in_width(d1 in distribution(12), d2 in distribution(12), width in 1u32..=10) {
        let dist = EntryDistribution::new(d1, d2);
        let a = optimal_pair_scheme(&dist, width, false).unwrap().p_success;
        let b = optimal_pair_scheme(&dist, width + 1, false).unwrap().p_success;
        prop_assert!(b >= a - 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&a));
    }
}

#[test]
fn worked_scheme_beats_huffman_but_not_optimum() {
    let dist = common::worked_instance();
    let table = common::worked_scheme().success_probability(&dist).unwrap();
    let optimum = optimal_pair_scheme(&dist, 4, false).unwrap().p_success;
    let huff = huffman_pair_success(&dist, 4).unwrap();
    assert!(huff < table && table < optimum);
    let l1 = optimal_pair_scheme(&dist, 4, false).unwrap().lengths1();
    let l2 = optimal_pair_scheme(&dist, 4, false).unwrap().lengths2();
    assert!((success_probability(&l1, &l2, &dist, 4).unwrap() - 0.972).abs() < 1e-9);
}
