//! Codewords, length vectors and codebooks.
//!
//! A codebook is index-aligned with an [`ElementDistribution`]: entry `i`
//! holds the codeword of the `i`-th most probable element, or nothing when
//! the element is left out of the code. The empty codeword is a real
//! codeword of length zero and is distinct from "no codeword".
//!
//! [`ElementDistribution`]: crate::distribution::ElementDistribution

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest memory width accepted by the solvers, so that every weight
/// `2^(L - len)` fits a `u64`.
pub const MAX_WIDTH: u32 = 62;

/// Longest codeword that can be stored.
pub const MAX_CODEWORD_LEN: u32 = 64;

/// A bit string read left to right. The leftmost bit is the most
/// significant bit of `bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword {
    bits: u64,
    len: u32,
}

impl Codeword {
    pub const EMPTY: Codeword = Codeword { bits: 0, len: 0 };

    /// Takes the low `len` bits of `bits`.
    pub fn new(bits: u64, len: u32) -> Self {
        assert!(len <= MAX_CODEWORD_LEN, "codeword too long: {len}");
        let bits = if len == 64 {
            bits
        } else {
            bits & ((1u64 << len) - 1)
        };
        Self { bits, len }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bits as an integer, leftmost bit most significant.
    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Bit at position `i`, counted from the left.
    pub fn bit(&self, i: u32) -> bool {
        debug_assert!(i < self.len);
        (self.bits >> (self.len - 1 - i)) & 1 == 1
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.len <= other.len
            && (self.len == 0 || other.bits >> (other.len - self.len) == self.bits)
    }

    /// The codeword with every trailing zero bit removed.
    pub fn strip_trailing_zeros(&self) -> Codeword {
        if self.bits == 0 {
            return Codeword::EMPTY;
        }
        let tz = self.bits.trailing_zeros();
        Codeword {
            bits: self.bits >> tz,
            len: self.len - tz,
        }
    }

    /// Shortest binary representation of `value`, least significant bit
    /// first. Zero maps to the empty codeword.
    pub fn lsb_first(value: u64) -> Codeword {
        let len = 64 - value.leading_zeros();
        Codeword {
            bits: if len == 0 {
                0
            } else {
                value.reverse_bits() >> (64 - len)
            },
            len,
        }
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_CODEWORD_LEN as usize {
            return Err(Error::InvalidBits(s.to_string()));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidBits(s.to_string())),
                };
        }
        Ok(Codeword {
            bits,
            len: s.len() as u32,
        })
    }
}

/// Per-element codeword lengths. `None` marks an element without a
/// codeword, which never encodes successfully.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LengthVector(Vec<Option<u32>>);

impl LengthVector {
    pub fn new(lengths: Vec<Option<u32>>) -> Self {
        Self(lengths)
    }

    /// Every element assigned.
    pub fn from_lengths(lengths: &[u32]) -> Self {
        Self(lengths.iter().map(|&l| Some(l)).collect())
    }

    /// `assigned` leading lengths followed by `n - assigned.len()` gaps.
    pub fn with_tail(assigned: &[u32], n: usize) -> Self {
        assert!(assigned.len() <= n);
        let mut v: Vec<Option<u32>> = assigned.iter().map(|&l| Some(l)).collect();
        v.resize(n, None);
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u32> {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        self.0.iter().copied()
    }

    pub fn assigned(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().filter_map(|l| *l)
    }

    pub fn assigned_count(&self) -> usize {
        self.assigned().count()
    }

    pub fn max_len(&self) -> Option<u32> {
        self.assigned().max()
    }

    /// Assigned lengths non-decreasing and gaps only at the tail.
    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => a <= b,
            (_, None) => true,
            (None, Some(_)) => false,
        })
    }

    /// Same multiset of lengths, sorted non-decreasing with gaps last.
    pub fn to_monotone(&self) -> LengthVector {
        let mut assigned: Vec<u32> = self.assigned().collect();
        assigned.sort_unstable();
        Self::with_tail(&assigned, self.len())
    }

    /// Sorted assigned lengths.
    pub fn sorted_assigned(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.assigned().collect();
        v.sort_unstable();
        v
    }
}

impl From<Vec<Option<u32>>> for LengthVector {
    fn from(v: Vec<Option<u32>>) -> Self {
        Self(v)
    }
}

impl fmt::Display for LengthVector {
    /// `(2,2,3,-,-)`, the notation of a DP traceback.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match l {
                Some(l) => write!(f, "{l}")?,
                None => f.write_str("-")?,
            }
        }
        f.write_str(")")
    }
}

/// Which decodability property a codebook was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Prefix,
    PaddingInvariant,
    Unchecked,
}

/// Optional codewords, index-aligned with an element distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    words: Vec<Option<Codeword>>,
    kind: CodeKind,
}

impl Codebook {
    /// Checks the property claimed by `kind`.
    pub fn new(words: Vec<Option<Codeword>>, kind: CodeKind) -> Result<Self> {
        let book = Self { words, kind };
        match kind {
            CodeKind::Prefix if !book.is_prefix() => Err(Error::NotPrefix),
            CodeKind::PaddingInvariant if !book.is_padding_invariant() => {
                Err(Error::NotPaddingInvariant)
            }
            _ => Ok(book),
        }
    }

    pub fn unchecked(words: Vec<Option<Codeword>>) -> Self {
        Self {
            words,
            kind: CodeKind::Unchecked,
        }
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> Option<&Codeword> {
        self.words[i].as_ref()
    }

    pub fn words(&self) -> &[Option<Codeword>] {
        &self.words
    }

    pub fn lengths(&self) -> LengthVector {
        LengthVector(self.words.iter().map(|w| w.map(|w| w.len())).collect())
    }

    pub fn is_prefix(&self) -> bool {
        check_prefix(self.words.iter().flatten())
    }

    pub fn is_padding_invariant(&self) -> bool {
        check_padding_invariant(self.words.iter().flatten())
    }

    pub fn to_doc(&self, labels: &[String], width: u32) -> CodebookDoc {
        debug_assert_eq!(labels.len(), self.words.len());
        CodebookDoc {
            width,
            codewords: labels
                .iter()
                .zip(&self.words)
                .map(|(label, w)| CodewordDoc {
                    label: label.clone(),
                    bits: w.map(|w| w.to_string()),
                })
                .collect(),
        }
    }
}

/// Sum of `2^(width - len)` over assigned lengths: the Kraft sum in units
/// of `2^-width`.
pub fn kraft_weight(lengths: &LengthVector, width: u32) -> Result<u128> {
    if width > MAX_WIDTH {
        return Err(Error::WidthTooLarge {
            width,
            max: MAX_WIDTH,
        });
    }
    lengths.assigned().try_fold(0u128, |acc, len| {
        if len > width {
            Err(Error::LengthExceedsWidth { length: len, width })
        } else {
            Ok(acc + (1u128 << (width - len)))
        }
    })
}

/// Canonical prefix code for the given lengths: shorter lengths first,
/// ties by element index, codewords handed out in increasing numeric
/// order. Elements without a length get no codeword.
pub fn canonical_prefix_from_lengths(lengths: &LengthVector) -> Result<Codebook> {
    let max = lengths.max_len().unwrap_or(0);
    if max > MAX_CODEWORD_LEN {
        return Err(Error::LengthExceedsWidth {
            length: max,
            width: MAX_CODEWORD_LEN,
        });
    }
    // Kraft sum in units of 2^-max; u128 holds 2^64 comfortably
    let total = lengths
        .assigned()
        .fold(0u128, |acc, l| acc.saturating_add(1u128 << (max - l)));
    if total > 1u128 << max {
        return Err(Error::KraftViolation);
    }

    let mut order: Vec<(u32, usize)> = lengths
        .iter()
        .enumerate()
        .filter_map(|(i, l)| l.map(|l| (l, i)))
        .collect();
    order.sort_unstable();

    let mut words = vec![None; lengths.len()];
    let mut code: u128 = 0;
    let mut prev_len = order.first().map_or(0, |&(l, _)| l);
    for (len, index) in order {
        code <<= len - prev_len;
        prev_len = len;
        words[index] = Some(Codeword::new(code as u64, len));
        code += 1;
    }
    Ok(Codebook {
        words,
        kind: CodeKind::Prefix,
    })
}

/// The code that maps element `j` (1-based) to `j - 1` written LSB first in
/// the fewest bits; element 1 gets the empty codeword. Padding-invariant
/// but not prefix.
pub fn universal_second_code(n: usize) -> Codebook {
    assert!(n >= 1, "universal second code needs at least one element");
    Codebook {
        words: (0..n as u64)
            .map(|v| Some(Codeword::lsb_first(v)))
            .collect(),
        kind: CodeKind::PaddingInvariant,
    }
}

/// Lengths of [`universal_second_code`] without building the codewords.
pub fn universal_second_lengths(n: usize) -> LengthVector {
    LengthVector(
        (0..n as u64)
            .map(|v| Some(64 - v.leading_zeros()))
            .collect(),
    )
}

/// Fixed-length code on all `n` elements using `ceil(log2 n)` bits.
pub fn fixed_length_code(n: usize) -> Codebook {
    let len = ceil_log2(n);
    canonical_prefix_from_lengths(&LengthVector(vec![Some(len); n]))
        .expect("fixed-length code satisfies Kraft")
}

pub fn ceil_log2(n: usize) -> u32 {
    assert!(n >= 1);
    usize::BITS - (n - 1).leading_zeros()
}

/// True iff no codeword is a prefix of another. The empty codeword is a
/// prefix of everything, and a repeated codeword counts as a prefix.
pub fn check_prefix<'a>(words: impl IntoIterator<Item = &'a Codeword>) -> bool {
    let mut strings: Vec<String> = words.into_iter().map(|w| w.to_string()).collect();
    strings.sort_unstable();
    strings.windows(2).all(|w| !w[1].starts_with(w[0].as_str()))
}

/// True iff the codewords stay pairwise distinct after removing trailing
/// zeros.
pub fn check_padding_invariant<'a>(words: impl IntoIterator<Item = &'a Codeword>) -> bool {
    let mut stripped: Vec<Codeword> = words
        .into_iter()
        .map(|w| w.strip_trailing_zeros())
        .collect();
    let n = stripped.len();
    stripped.sort_unstable_by_key(|w| (w.len, w.bits));
    stripped.dedup();
    stripped.len() == n
}

/// On-disk form: `{"L":int,"codewords":[{"label":..,"bits":"01"|""|null}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodebookDoc {
    #[serde(rename = "L")]
    pub width: u32,
    pub codewords: Vec<CodewordDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodewordDoc {
    pub label: String,
    pub bits: Option<String>,
}

impl CodebookDoc {
    pub fn labels(&self) -> Vec<String> {
        self.codewords.iter().map(|c| c.label.clone()).collect()
    }

    /// Parses the codewords and checks `kind`.
    pub fn to_codebook(&self, kind: CodeKind) -> Result<Codebook> {
        let words = self
            .codewords
            .iter()
            .map(|c| c.bits.as_deref().map(str::parse).transpose())
            .collect::<Result<Vec<_>>>()?;
        Codebook::new(words, kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    fn words(list: &[&str]) -> Vec<Codeword> {
        list.iter().map(|s| cw(s)).collect()
    }

    fn strings(book: &Codebook) -> Vec<String> {
        book.words()
            .iter()
            .map(|w| w.map_or("-".to_string(), |w| w.to_string()))
            .collect()
    }

    #[test]
    fn codeword_parse_display() {
        assert_eq!(cw("0110").to_string(), "0110");
        assert_eq!(cw("").len(), 0);
        assert_eq!(cw("").to_string(), "");
        assert!("012".parse::<Codeword>().is_err());
        assert!(cw("11").is_prefix_of(&cw("110")));
        assert!(!cw("10").is_prefix_of(&cw("110")));
        assert!(Codeword::EMPTY.is_prefix_of(&cw("1")));
        assert_eq!(cw("1100").strip_trailing_zeros(), cw("11"));
        assert_eq!(cw("000").strip_trailing_zeros(), Codeword::EMPTY);
    }

    #[test]
    fn lsb_first_representation() {
        assert_eq!(Codeword::lsb_first(0), Codeword::EMPTY);
        assert_eq!(Codeword::lsb_first(1).to_string(), "1");
        assert_eq!(Codeword::lsb_first(2).to_string(), "01");
        assert_eq!(Codeword::lsb_first(3).to_string(), "11");
        assert_eq!(Codeword::lsb_first(6).to_string(), "011");
        assert_eq!(Codeword::lsb_first(u64::MAX).len(), 64);
    }

    #[test]
    fn kraft_weight_examples() {
        let l = LengthVector::from_lengths(&[2, 2, 2, 3, 3]);
        assert_eq!(kraft_weight(&l, 4).unwrap(), 16);
        let l = LengthVector::from_lengths(&[1, 2, 2]);
        assert_eq!(kraft_weight(&l, 2).unwrap(), 4);
        assert_eq!(kraft_weight(&LengthVector::default(), 7).unwrap(), 0);
        assert_eq!(
            kraft_weight(&LengthVector::with_tail(&[1], 3), 3).unwrap(),
            4
        );
        assert!(matches!(
            kraft_weight(&LengthVector::from_lengths(&[5]), 4),
            Err(Error::LengthExceedsWidth {
                length: 5,
                width: 4
            })
        ));
        assert!(matches!(
            kraft_weight(&LengthVector::default(), 63),
            Err(Error::WidthTooLarge { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        let b =
            canonical_prefix_from_lengths(&LengthVector::from_lengths(&[2, 2, 2, 3, 3])).unwrap();
        assert_eq!(strings(&b), ["00", "01", "10", "110", "111"]);
        assert_eq!(b.kind(), CodeKind::Prefix);
        let b = canonical_prefix_from_lengths(&LengthVector::from_lengths(&[1, 2, 2])).unwrap();
        assert_eq!(strings(&b), ["0", "10", "11"]);
        let b = canonical_prefix_from_lengths(&LengthVector::from_lengths(&[1, 1])).unwrap();
        assert_eq!(strings(&b), ["0", "1"]);
        let b = canonical_prefix_from_lengths(&LengthVector::with_tail(&[2, 2], 4)).unwrap();
        assert_eq!(strings(&b), ["00", "01", "-", "-"]);
        assert!(matches!(
            canonical_prefix_from_lengths(&LengthVector::from_lengths(&[1, 1, 2])),
            Err(Error::KraftViolation)
        ));
    }

    #[test]
    fn canonical_handles_unsorted_lengths() {
        let b = canonical_prefix_from_lengths(&LengthVector::new(vec![
            Some(3),
            None,
            Some(1),
            Some(3),
        ]))
        .unwrap();
        assert_eq!(strings(&b), ["100", "-", "0", "101"]);
        assert!(b.is_prefix());
    }

    #[test]
    fn universal_code_examples() {
        let show = |n| strings(&universal_second_code(n));
        assert_eq!(show(3), ["", "1", "01"]);
        assert_eq!(show(4), ["", "1", "01", "11"]);
        assert_eq!(show(1), [""]);
        assert_eq!(universal_second_code(3).kind(), CodeKind::PaddingInvariant);
        assert!(!universal_second_code(3).is_prefix());
    }

    #[test]
    fn universal_code_is_padding_invariant_up_to_4096() {
        let book = universal_second_code(4096);
        assert!(book.is_padding_invariant());
        let lengths = book.lengths();
        assert_eq!(lengths, universal_second_lengths(4096));
        for j in 1..=4096usize {
            let expected = if j == 1 { 0 } else { (j - 1).ilog2() + 1 };
            assert_eq!(lengths.get(j - 1), Some(expected), "element {j}");
        }
        for b in 0..=12u32 {
            let count = lengths.assigned().filter(|&l| l <= b).count();
            assert_eq!(count, 1 << b, "lengths <= {b}");
        }
    }

    #[test]
    fn every_universal_prefix_is_padding_invariant() {
        for n in 1..=4096 {
            let book = universal_second_code(n);
            assert!(book.is_padding_invariant(), "n = {n}");
        }
    }

    #[test]
    fn prefix_and_padding_examples() {
        let sigma = words(&["0", "11", "100", "101"]);
        let sigma_p = words(&["", "1", "110"]);
        let sigma_pp = words(&["1", "10", "00"]);
        assert!(check_prefix(&sigma));
        assert!(!check_prefix(&sigma_p));
        assert!(!check_prefix(&sigma_pp));
        assert!(check_padding_invariant(&sigma));
        assert!(check_padding_invariant(&sigma_p));
        assert!(!check_padding_invariant(&sigma_pp));
        assert!(!check_prefix(&words(&["01", "01"])));
        assert!(check_prefix(&words(&[""])));
    }

    #[test]
    fn codebook_kind_is_enforced() {
        assert!(matches!(
            Codebook::new(vec![Some(cw("1")), Some(cw("10"))], CodeKind::Prefix),
            Err(Error::NotPrefix)
        ));
        assert!(matches!(
            Codebook::new(
                vec![Some(cw("1")), Some(cw("10"))],
                CodeKind::PaddingInvariant
            ),
            Err(Error::NotPaddingInvariant)
        ));
        assert!(Codebook::new(vec![Some(cw("1")), None, Some(cw("0"))], CodeKind::Prefix).is_ok());
    }

    #[test]
    fn length_vector_shape() {
        let v = LengthVector::new(vec![Some(3), Some(1), None, Some(2)]);
        assert!(!v.is_monotone());
        let m = v.to_monotone();
        assert_eq!(m.to_string(), "(1,2,3,-)");
        assert!(m.is_monotone());
        assert_eq!(v.assigned_count(), 3);
    }

    #[test]
    fn codebook_doc_roundtrip() {
        let book = canonical_prefix_from_lengths(&LengthVector::with_tail(&[1, 2], 3)).unwrap();
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let doc = book.to_doc(&labels, 4);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            json,
            r#"{"L":4,"codewords":[{"label":"a","bits":"0"},{"label":"b","bits":"10"},{"label":"c","bits":null}]}"#
        );
        let back: CodebookDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_codebook(CodeKind::Prefix).unwrap(), book);
    }

    proptest::proptest! {
        #[test]
        fn canonical_output_is_prefix(raw in proptest::collection::vec(1u32..12, 1..40)) {
            // shrink lengths until Kraft holds
            let mut lengths = raw.clone();
            lengths.sort_unstable();
            while lengths.iter().map(|&l| 1u128 << (20 - l)).sum::<u128>() > 1 << 20 {
                let i = lengths.iter().position(|&l| l < 20).unwrap();
                lengths[i] += 1;
                lengths.sort_unstable();
            }
            let book = canonical_prefix_from_lengths(&LengthVector::from_lengths(&lengths)).unwrap();
            proptest::prop_assert!(book.is_prefix());
            proptest::prop_assert!(book.is_padding_invariant());
            proptest::prop_assert_eq!(book.lengths(), LengthVector::from_lengths(&lengths));
        }

        #[test]
        fn kraft_weight_matches_big_integers(
            lengths in proptest::collection::vec(proptest::option::of(0u32..=40), 0..200),
            width in 40u32..=62,
        ) {
            let v = LengthVector::new(lengths.clone());
            let exact = lengths
                .iter()
                .flatten()
                .fold(num_bigint::BigUint::from(0u8), |acc, &l| {
                    acc + (num_bigint::BigUint::from(1u8) << (width - l) as usize)
                });
            proptest::prop_assert_eq!(
                num_bigint::BigUint::from(kraft_weight(&v, width).unwrap()),
                exact
            );
        }
    }
}
