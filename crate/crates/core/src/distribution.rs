//! Element and entry distributions.
//!
//! An [`ElementDistribution`] is the ordered support of one entry field:
//! elements are kept sorted by non-increasing probability, so index 0 is
//! always the most probable element. Every solver in this crate relies on
//! that ordering.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|sum(p) - 1|` accepted by the validator.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Ordered elements of one field with strictly positive probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementDistribution {
    labels: Vec<String>,
    probs: Vec<f64>,
}

impl ElementDistribution {
    /// Validates and sorts by probability, descending. Equal probabilities
    /// keep their input order.
    pub fn new<S: Into<String>>(labels: Vec<S>, probs: Vec<f64>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() && probs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if labels.len() != probs.len() {
            return Err(Error::DimensionMismatch {
                what: "labels vs probabilities",
                expected: labels.len(),
                found: probs.len(),
            });
        }
        for (index, &prob) in probs.iter().enumerate() {
            // NaN fails this comparison as well
            if prob.is_nan() || prob <= 0.0 {
                return Err(Error::NonPositiveProbability { index, prob });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::ProbabilitySumMismatch {
                sum,
                tolerance: SUM_TOLERANCE,
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }

        let mut order: Vec<usize> = (0..probs.len()).collect();
        // sort_by is stable
        order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]));
        Ok(Self {
            labels: order.iter().map(|&i| labels[i].clone()).collect(),
            probs: order.iter().map(|&i| probs[i]).collect(),
        })
    }

    /// Distribution labelled `"1"`, `"2"`, ... in input order.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        let labels = (1..=probs.len()).map(|i| i.to_string()).collect();
        Self::new(labels, probs)
    }

    /// Zipf law on `n` elements: `p_i` proportional to `i^(-mu)`.
    pub fn zipf(n: usize, mu: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if mu.is_nan() || mu < 0.0 || !mu.is_finite() {
            return Err(Error::Precondition(format!(
                "zipf exponent must be finite and non-negative, got {mu}"
            )));
        }
        let weights: Vec<f64> = (1..=n).map(|i| (i as f64).powf(-mu)).collect();
        let total: f64 = weights.iter().sum();
        Self::from_probs(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Running sums: `prefix_sums()[k]` is the mass of the `k` most probable
    /// elements.
    pub fn prefix_sums(&self) -> Vec<f64> {
        let mut sums = Vec::with_capacity(self.len() + 1);
        sums.push(0.0);
        let mut acc = 0.0;
        for &p in &self.probs {
            acc += p;
            sums.push(acc);
        }
        sums
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: DistributionDoc = serde_json::from_str(text)?;
        doc.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn to_doc(&self) -> DistributionDoc {
        DistributionDoc {
            elements: self
                .labels
                .iter()
                .zip(&self.probs)
                .map(|(label, &prob)| ElementDoc {
                    label: label.clone(),
                    prob,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("distribution serializes")
    }
}

/// The two field distributions of an entry.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryDistribution {
    pub first: ElementDistribution,
    pub second: ElementDistribution,
}

impl EntryDistribution {
    pub fn new(first: ElementDistribution, second: ElementDistribution) -> Self {
        Self { first, second }
    }

    /// Both fields drawn from the same distribution.
    pub fn symmetric(dist: ElementDistribution) -> Self {
        Self {
            first: dist.clone(),
            second: dist,
        }
    }
}

/// On-disk form: `{"elements":[{"label":..,"prob":..},..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionDoc {
    pub elements: Vec<ElementDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementDoc {
    pub label: String,
    pub prob: f64,
}

impl TryFrom<DistributionDoc> for ElementDistribution {
    type Error = Error;

    fn try_from(doc: DistributionDoc) -> Result<Self> {
        let (labels, probs) = doc.elements.into_iter().map(|e| (e.label, e.prob)).unzip();
        ElementDistribution::new::<String>(labels, probs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_sorted_input() {
        let d = ElementDistribution::new(
            vec!["a", "b", "c", "d", "e"],
            vec![0.4, 0.3, 0.16, 0.08, 0.06],
        )
        .unwrap();
        assert_eq!(d.labels(), ["a", "b", "c", "d", "e"]);
        assert_eq!(d.probs(), [0.4, 0.3, 0.16, 0.08, 0.06]);
    }

    #[test]
    fn ties_are_stable() {
        let d = ElementDistribution::new(vec!["x", "y"], vec![0.5, 0.5]).unwrap();
        assert_eq!(d.labels(), ["x", "y"]);
    }

    #[test]
    fn reorders_descending() {
        let d = ElementDistribution::new(vec!["u", "v"], vec![0.3, 0.7]).unwrap();
        assert_eq!(d.labels(), ["v", "u"]);
        assert_eq!(d.probs(), [0.7, 0.3]);
        assert_eq!(d.index_of("u"), Some(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ElementDistribution::new::<&str>(vec![], vec![]),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(
            ElementDistribution::new(vec!["a", "b"], vec![1.0, 0.0]),
            Err(Error::NonPositiveProbability { index: 1, .. })
        ));
        assert!(matches!(
            ElementDistribution::new(vec!["a", "b"], vec![0.5, 0.4]),
            Err(Error::ProbabilitySumMismatch { .. })
        ));
        assert!(matches!(
            ElementDistribution::new(vec!["a", "a"], vec![0.5, 0.5]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            ElementDistribution::new(vec!["a"], vec![0.5, 0.5]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ElementDistribution::new(vec!["a", "b"], vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn zipf_closed_forms() {
        let u = ElementDistribution::zipf(4, 0.0).unwrap();
        for &p in u.probs() {
            assert!((p - 0.25).abs() <= 1e-12);
        }
        let z = ElementDistribution::zipf(2, 1.0).unwrap();
        assert!((z.prob(0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((z.prob(1) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(z.labels(), ["1", "2"]);
        assert!(matches!(
            ElementDistribution::zipf(0, 1.0),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn json_roundtrip_validates() {
        let text = r#"{"elements":[{"label":"u","prob":0.3},{"label":"v","prob":0.7}]}"#;
        let d = ElementDistribution::from_json_str(text).unwrap();
        assert_eq!(d.labels(), ["v", "u"]);
        let again = ElementDistribution::from_json_str(&d.to_json()).unwrap();
        assert_eq!(d, again);

        let bad = r#"{"elements":[{"label":"u","prob":0.3}]}"#;
        assert!(ElementDistribution::from_json_str(bad).is_err());
    }

    proptest::proptest! {
        #[test]
        fn zipf_is_valid_and_monotone(n in 1usize..300, mu in 0.0f64..4.0) {
            let z = ElementDistribution::zipf(n, mu).unwrap();
            let sum: f64 = z.probs().iter().sum();
            proptest::prop_assert!((sum - 1.0).abs() <= 1e-9);
            proptest::prop_assert!(z.probs().iter().all(|&p| p > 0.0));
            proptest::prop_assert!(z.probs().windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
