//! Exhaustive ground truth for small instances.
//!
//! Everything here is deliberately naive: length vectors are enumerated
//! outright and scored by direct summation, so the results can be trusted
//! as an independent check on the dynamic programs.

use std::collections::HashMap;

use rand::Rng;

use crate::codebook::LengthVector;
use crate::codec::success_probability;
use crate::distribution::{ElementDistribution, EntryDistribution};
use crate::error::{Error, Result};

/// Default cap on the number of vectors one enumeration may produce.
pub const DEFAULT_CAP: usize = 10_000_000;

/// Largest `n` and `L` accepted by the brute-force optimizers.
pub const MAX_BRUTE_ELEMENTS: usize = 8;
pub const MAX_BRUTE_WIDTH: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KraftMode {
    /// Complete codes: `sum 2^-len == 1`.
    Equality,
    /// Any prefix code: `sum 2^-len <= 1`.
    AtMost,
}

/// Non-decreasing length vectors, all of the same size.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonotoneLengthVectorSet {
    pub vectors: Vec<Vec<u32>>,
}

impl MonotoneLengthVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.vectors.iter().any(|x| x == v)
    }
}

/// All monotone length vectors of exactly `n` entries with every length at
/// most `max_len`.
///
/// Equality mode composes each tree from a left and a right monotone
/// subtree, where the deepest leaf on the left may not be deeper than the
/// shallowest leaf on the right. For `n = 1` it yields the single vector
/// `(0)`. At-most mode walks all non-decreasing vectors with lengths in
/// `1..=max_len` under the Kraft budget.
pub fn enumerate_monotone_vectors(
    n: usize,
    max_len: u32,
    mode: KraftMode,
    cap: usize,
) -> Result<MonotoneLengthVectorSet> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if max_len == 0 {
        return Err(Error::Precondition("max_len must be at least 1".into()));
    }
    match mode {
        KraftMode::Equality => {
            let projected = count_codes(n)?;
            if projected > cap as u128 {
                return Err(Error::ExplosionGuard { cap });
            }
            let mut trees: Vec<Vec<Vec<u32>>> = vec![Vec::new(), vec![vec![0]]];
            for size in 2..=n {
                let mut out = Vec::new();
                for left in 1..=size / 2 {
                    for l in &trees[left] {
                        for r in &trees[size - left] {
                            if l.last() <= r.first() {
                                out.push(l.iter().chain(r).map(|d| d + 1).collect());
                            }
                        }
                    }
                }
                trees.push(out);
            }
            let vectors = trees
                .swap_remove(n)
                .into_iter()
                .filter(|v: &Vec<u32>| v.last().is_some_and(|&l| l <= max_len))
                .collect();
            Ok(MonotoneLengthVectorSet { vectors })
        }
        KraftMode::AtMost => {
            if max_len > 120 {
                return Err(Error::Precondition("max_len above 120".into()));
            }
            let mut vectors = Vec::new();
            let mut current = Vec::with_capacity(n);
            walk_at_most(
                n,
                1,
                max_len,
                1u128 << max_len,
                &mut current,
                &mut vectors,
                cap,
            )?;
            Ok(MonotoneLengthVectorSet { vectors })
        }
    }
}

fn walk_at_most(
    n: usize,
    min_len: u32,
    max_len: u32,
    budget: u128,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    cap: usize,
) -> Result<()> {
    if current.len() == n {
        if out.len() >= cap {
            return Err(Error::ExplosionGuard { cap });
        }
        out.push(current.clone());
        return Ok(());
    }
    for len in min_len..=max_len {
        let weight = 1u128 << (max_len - len);
        if weight > budget {
            continue;
        }
        current.push(len);
        walk_at_most(n, len, max_len, budget - weight, current, out, cap)?;
        current.pop();
    }
    Ok(())
}

/// Number of monotone complete codes on `n` elements, by the recursion on
/// `A(i, min_len, x)`: the number of non-decreasing vectors of `i` lengths,
/// each at least `min_len` and at most `n - 1`, whose Kraft sum is `x`.
/// `x` is held as an integer number of units of `2^-(n-1)`.
pub fn count_codes(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > 64 {
        return Err(Error::Precondition(format!(
            "count_codes supports n <= 64, got {n}"
        )));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut counter = CodeCounter {
        top: (n - 1) as u32,
        n,
        memo: HashMap::new(),
    };
    counter.count(n, 1, 1u128 << (n - 1))
}

struct CodeCounter {
    /// Longest allowed length, `n - 1`.
    top: u32,
    n: usize,
    memo: HashMap<(usize, u32, u128), u128>,
}

impl CodeCounter {
    fn unit(&self, len: u32) -> u128 {
        1u128 << (self.top - len)
    }

    fn count(&mut self, i: usize, min_len: u32, x: u128) -> Result<u128> {
        if x == 0 || min_len > self.top {
            return Ok(0);
        }
        // each length contributes between one unit and 2^-min_len
        if x < i as u128 || x > i as u128 * self.unit(min_len) {
            return Ok(0);
        }
        if i == 1 {
            let hit = x.is_power_of_two() && x <= self.unit(min_len);
            return Ok(hit as u128);
        }
        if let Some(&v) = self.memo.get(&(i, min_len, x)) {
            return Ok(v);
        }
        let mut total: u128 = 0;
        for r in min_len..=self.top {
            let w = self.unit(r);
            if w >= x {
                continue;
            }
            let sub = self.count(i - 1, r, x - w)?;
            total = total
                .checked_add(sub)
                .ok_or(Error::Overflow { n: self.n })?;
        }
        self.memo.insert((i, min_len, x), total);
        Ok(total)
    }
}

/// Monotone second-field length vectors of `n` entries with lengths in
/// `0..=max_len` that a padding-invariant code can realize: at most `2^b`
/// codewords of length `<= b` for every `b`. Equivalently the `i`-th
/// shortest length (0-based) is at least the bit length of `i`.
pub fn padding_invariant_vectors(n: usize, max_len: u32, cap: usize) -> Result<Vec<Vec<u32>>> {
    fn walk(
        n: usize,
        min_len: u32,
        max_len: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
    ) -> Result<()> {
        if current.len() == n {
            if out.len() >= cap {
                return Err(Error::ExplosionGuard { cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let i = current.len() as u64;
        let floor = 64 - i.leading_zeros();
        for len in min_len.max(floor)..=max_len {
            current.push(len);
            walk(n, len, max_len, current, out, cap)?;
            current.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(n, 0, max_len, &mut Vec::with_capacity(n), &mut out, cap)?;
    Ok(out)
}

/// Random distribution on `n` elements for randomized self-tests. Weights
/// are drawn from `[0.05, 1)` so no element is vanishingly rare.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ElementDistribution {
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    ElementDistribution::from_probs(weights.iter().map(|w| w / total).collect())
        .expect("normalized positive weights are valid")
}

/// Candidate vectors for one field: every assigned prefix size `0..=n`,
/// padded with gaps.
fn with_gaps(n: usize, f: impl Fn(usize) -> Result<Vec<Vec<u32>>>) -> Result<Vec<LengthVector>> {
    let mut out = vec![LengthVector::new(vec![None; n])];
    for assigned in 1..=n {
        out.extend(f(assigned)?.iter().map(|v| LengthVector::with_tail(v, n)));
    }
    Ok(out)
}

fn check_brute_bounds(sizes: &[usize], width: u32) -> Result<()> {
    if let Some(&n) = sizes.iter().find(|&&n| n > MAX_BRUTE_ELEMENTS) {
        return Err(Error::Precondition(format!(
            "brute force supports at most {MAX_BRUTE_ELEMENTS} elements per field, got {n}"
        )));
    }
    if width == 0 || width > MAX_BRUTE_WIDTH {
        return Err(Error::Precondition(format!(
            "brute force supports 1 <= L <= {MAX_BRUTE_WIDTH}, got {width}"
        )));
    }
    Ok(())
}

/// Exhaustive optimum over schemes with a prefix first code and a
/// padding-invariant second code.
pub fn brute_force_optimal_pair(
    dist: &EntryDistribution,
    width: u32,
) -> Result<(LengthVector, LengthVector, f64)> {
    let (n1, n2) = (dist.first.len(), dist.second.len());
    check_brute_bounds(&[n1, n2], width)?;
    let firsts = with_gaps(n1, |k| {
        Ok(enumerate_monotone_vectors(k, width, KraftMode::AtMost, DEFAULT_CAP)?.vectors)
    })?;
    let seconds = with_gaps(n2, |k| padding_invariant_vectors(k, width, DEFAULT_CAP))?;

    // cumulative second-field mass by length, per candidate
    let fits: Vec<Vec<f64>> = seconds
        .iter()
        .map(|v| {
            let mut upto = vec![0.0; width as usize + 1];
            for (len, &p) in v.iter().zip(dist.second.probs()) {
                if let Some(len) = len {
                    for slot in &mut upto[len as usize..] {
                        *slot += p;
                    }
                }
            }
            upto
        })
        .collect();

    let mut best = (0usize, 0usize, f64::NEG_INFINITY);
    for (i, first) in firsts.iter().enumerate() {
        for (j, upto) in fits.iter().enumerate() {
            let mut total = 0.0;
            for (len, &p) in first.iter().zip(dist.first.probs()) {
                if let Some(len) = len {
                    total += p * upto[(width - len) as usize];
                }
            }
            if total > best.2 {
                best = (i, j, total);
            }
        }
    }
    let (l1, l2) = (firsts[best.0].clone(), seconds[best.1].clone());
    let p = success_probability(&l1, &l2, dist, width)?;
    Ok((l1, l2, p))
}

/// Exhaustive optimum over shared prefix codes with lengths in `1..L`.
pub fn brute_force_optimal_shared(
    dist: &ElementDistribution,
    width: u32,
) -> Result<(LengthVector, f64)> {
    let n = dist.len();
    check_brute_bounds(&[n], width)?;
    let candidates = if width < 2 {
        vec![LengthVector::new(vec![None; n])]
    } else {
        with_gaps(n, |k| {
            Ok(enumerate_monotone_vectors(k, width - 1, KraftMode::AtMost, DEFAULT_CAP)?.vectors)
        })?
    };
    let symmetric = EntryDistribution::symmetric(dist.clone());
    let mut best = (LengthVector::default(), f64::NEG_INFINITY);
    for v in candidates {
        let p = success_probability(&v, &v, &symmetric, width)?;
        if p > best.1 {
            best = (v, p);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(n: usize) -> MonotoneLengthVectorSet {
        enumerate_monotone_vectors(n, 64, KraftMode::Equality, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn small_trees() {
        assert_eq!(eq(1).vectors, [vec![0]]);
        assert_eq!(eq(2).vectors, [vec![1, 1]]);
        assert_eq!(eq(3).vectors, [vec![1, 2, 2]]);
        let four = eq(4);
        assert_eq!(four.len(), 2);
        assert!(four.contains(&[1, 2, 3, 3]));
        assert!(four.contains(&[2, 2, 2, 2]));
        let five = eq(5);
        assert_eq!(five.len(), 3);
        for v in [[1, 2, 3, 4, 4], [1, 3, 3, 3, 3], [2, 2, 2, 3, 3]] {
            assert!(five.contains(&v));
        }
        let six = eq(6);
        assert_eq!(six.len(), 5);
        for v in [
            [1, 2, 3, 4, 5, 5],
            [1, 2, 4, 4, 4, 4],
            [1, 3, 3, 3, 4, 4],
            [2, 2, 2, 3, 4, 4],
            [2, 2, 3, 3, 3, 3],
        ] {
            assert!(six.contains(&v));
        }
    }

    #[test]
    fn max_len_filters() {
        let four = enumerate_monotone_vectors(4, 2, KraftMode::Equality, DEFAULT_CAP).unwrap();
        assert_eq!(four.vectors, [vec![2, 2, 2, 2]]);
    }

    #[test]
    fn counts() {
        let z: Vec<u128> = (1..=10).map(|n| count_codes(n).unwrap()).collect();
        assert_eq!(z, [1, 1, 1, 2, 3, 5, 9, 16, 28, 50]);
        assert!(count_codes(0).is_err());
        assert!(count_codes(65).is_err());
    }

    #[test]
    fn enumeration_matches_count() {
        for n in 1..=12 {
            let set = enumerate_monotone_vectors(
                n,
                (n as u32).saturating_sub(1).max(1),
                KraftMode::Equality,
                DEFAULT_CAP,
            )
            .unwrap();
            assert_eq!(set.len() as u128, count_codes(n).unwrap(), "n = {n}");
            if n >= 2 {
                for v in &set.vectors {
                    assert!(v.windows(2).all(|w| w[0] <= w[1]));
                    assert_eq!(v[n - 2], v[n - 1]);
                    assert!((v[n - 1] as usize) < n);
                    let kraft: f64 = v.iter().map(|&l| 0.5f64.powi(l as i32)).sum();
                    assert!((kraft - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn at_most_mode() {
        let set = enumerate_monotone_vectors(2, 2, KraftMode::AtMost, DEFAULT_CAP).unwrap();
        assert_eq!(set.vectors, [vec![1, 1], vec![1, 2], vec![2, 2]]);
        let set = enumerate_monotone_vectors(3, 1, KraftMode::AtMost, DEFAULT_CAP).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn explosion_guard() {
        assert!(matches!(
            enumerate_monotone_vectors(30, 29, KraftMode::Equality, 1000),
            Err(Error::ExplosionGuard { cap: 1000 })
        ));
        assert!(matches!(
            enumerate_monotone_vectors(8, 8, KraftMode::AtMost, 10),
            Err(Error::ExplosionGuard { cap: 10 })
        ));
    }

    #[test]
    fn padding_invariant_candidates() {
        let v = padding_invariant_vectors(3, 2, DEFAULT_CAP).unwrap();
        assert!(v.contains(&vec![0, 1, 2]));
        assert!(!v.contains(&vec![0, 1, 1]));
        assert!(!v.contains(&vec![0, 0, 2]));
        assert!(v.contains(&vec![1, 1, 2]));
    }

    #[test]
    fn brute_pair_worked_instance() {
        let d = EntryDistribution::new(
            ElementDistribution::from_probs(vec![0.4, 0.3, 0.16, 0.08, 0.06]).unwrap(),
            ElementDistribution::from_probs(vec![0.5, 0.3, 0.2]).unwrap(),
        );
        let (l1, _, p) = brute_force_optimal_pair(&d, 4).unwrap();
        assert!((p - 0.972).abs() < 1e-9);
        assert_eq!(l1.sorted_assigned(), [2, 2, 2, 3, 3]);
    }

    #[test]
    fn brute_pair_single_elements() {
        let one = ElementDistribution::from_probs(vec![1.0]).unwrap();
        let d = EntryDistribution::symmetric(one);
        for width in 1..=3 {
            let (_, _, p) = brute_force_optimal_pair(&d, width).unwrap();
            assert_eq!(p, 1.0);
        }
    }

    #[test]
    fn brute_shared_small() {
        let d = ElementDistribution::from_probs(vec![0.9, 0.1]).unwrap();
        let (l, p) = brute_force_optimal_shared(&d, 2).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert_eq!(l.to_string(), "(1,1)");
        let one = ElementDistribution::from_probs(vec![1.0]).unwrap();
        assert_eq!(brute_force_optimal_shared(&one, 2).unwrap().1, 1.0);
    }

    #[test]
    fn brute_bounds() {
        let big = ElementDistribution::zipf(9, 1.0).unwrap();
        assert!(matches!(
            brute_force_optimal_shared(&big, 4),
            Err(Error::Precondition(_))
        ));
        let small = ElementDistribution::zipf(3, 1.0).unwrap();
        assert!(brute_force_optimal_shared(&small, 9).is_err());
    }
}
