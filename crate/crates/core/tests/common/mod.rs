//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use fwcodec::codebook::canonical_prefix_from_lengths;
use fwcodec::{ElementDistribution, EntryDistribution, EntryScheme, LengthVector};
use rand::Rng;

/// Five first-field elements `a..e` and three second-field elements `x..z`.
pub fn worked_instance() -> EntryDistribution {
    EntryDistribution::new(
        ElementDistribution::new(
            vec!["a", "b", "c", "d", "e"],
            vec![0.4, 0.3, 0.16, 0.08, 0.06],
        )
        .unwrap(),
        ElementDistribution::new(vec!["x", "y", "z"], vec![0.5, 0.3, 0.2]).unwrap(),
    )
}

/// Canonical codes with lengths (2,2,2,3,3) and (1,2,2) in a 4-bit word.
pub fn worked_scheme() -> EntryScheme {
    let s1 = canonical_prefix_from_lengths(&LengthVector::from_lengths(&[2, 2, 2, 3, 3])).unwrap();
    let s2 = canonical_prefix_from_lengths(&LengthVector::from_lengths(&[1, 2, 2])).unwrap();
    EntryScheme::new(s1, s2, 4).unwrap()
}

/// Fifteen elements: two at 0.4, one at 0.08 and twelve at 0.01.
pub fn fifteen_elements() -> ElementDistribution {
    let mut probs = vec![0.4, 0.4, 0.08];
    probs.extend(std::iter::repeat_n(0.01, 12));
    ElementDistribution::from_probs(probs).unwrap()
}

/// Random distribution whose skew varies from near-uniform to steep.
pub fn skewed_distribution<R: Rng>(rng: &mut R, n: usize) -> ElementDistribution {
    let steepness = rng.gen_range(0.0..4.0);
    let weights: Vec<f64> = (0..n)
        .map(|_| (rng.gen_range(0.0..1.0f64) * steepness).exp() * rng.gen_range(0.1..1.0))
        .collect();
    let total: f64 = weights.iter().sum();
    ElementDistribution::from_probs(weights.iter().map(|w| w / total).collect()).unwrap()
}
