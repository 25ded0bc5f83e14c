//! Bit-exact entry encoding and decoding.
//!
//! An entry `(a1, a2)` is stored as `code1(a1) . code2(a2) . 0...0`, exactly
//! `L` bits. The first code must be prefix so the decoder can find where the
//! first field ends. The second code is either padding-invariant, decoded by
//! stripping trailing zeros, or prefix, decoded by a unique prefix match
//! followed by an all-zero tail.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codebook::{CodeKind, Codebook, CodebookDoc, Codeword, LengthVector, MAX_WIDTH};
use crate::distribution::EntryDistribution;
use crate::error::{Error, Result};

/// One memory word of exactly `width` bits, leftmost bit most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EncodedWord {
    bits: u64,
    width: u32,
}

impl EncodedWord {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Parses a `0`/`1` string that must be exactly `width` long.
    pub fn parse(s: &str, width: u32) -> Result<Self> {
        if s.len() != width as usize {
            return Err(Error::WordLengthMismatch {
                found: s.chars().count(),
                width,
            });
        }
        let word: Codeword = s.parse()?;
        Ok(Self {
            bits: word.value(),
            width,
        })
    }

    fn prefix(&self, len: u32) -> Codeword {
        if len == 0 {
            Codeword::EMPTY
        } else {
            Codeword::new(self.bits >> (self.width - len), len)
        }
    }

    fn suffix(&self, from: u32) -> Codeword {
        Codeword::new(self.bits, self.width - from)
    }
}

impl fmt::Display for EncodedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Codeword::new(self.bits, self.width).fmt(f)
    }
}

/// A pair of codes together with the memory width.
#[derive(Debug, Clone)]
pub struct EntryScheme {
    first: Codebook,
    second: Codebook,
    width: u32,
    first_index: HashMap<Codeword, usize>,
    second_index: HashMap<Codeword, usize>,
}

impl EntryScheme {
    /// `first` must be a prefix code with every codeword at most `width`
    /// bits; `second` must be built as prefix or padding-invariant.
    pub fn new(first: Codebook, second: Codebook, width: u32) -> Result<Self> {
        if width == 0 {
            return Err(Error::WidthTooSmall { width, min: 1 });
        }
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        if first.kind() != CodeKind::Prefix || !first.is_prefix() {
            return Err(Error::NotPrefix);
        }
        if let Some(length) = first.lengths().max_len().filter(|&l| l > width) {
            return Err(Error::LengthExceedsWidth { length, width });
        }
        let second_ok = match second.kind() {
            CodeKind::Prefix => second.is_prefix(),
            CodeKind::PaddingInvariant => second.is_padding_invariant(),
            CodeKind::Unchecked => false,
        };
        if !second_ok {
            return Err(Error::NotPaddingInvariant);
        }

        let first_index = index_words(&first, |w| *w);
        let second_index = match second.kind() {
            CodeKind::PaddingInvariant => index_words(&second, Codeword::strip_trailing_zeros),
            _ => index_words(&second, |w| *w),
        };
        Ok(Self {
            first,
            second,
            width,
            first_index,
            second_index,
        })
    }

    pub fn first(&self) -> &Codebook {
        &self.first
    }

    pub fn second(&self) -> &Codebook {
        &self.second
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// `Ok(None)` is the encoding failure: an element has no codeword or the
    /// two codewords need more than `width` bits.
    pub fn encode(&self, first: usize, second: usize) -> Result<Option<EncodedWord>> {
        let c1 = lookup(&self.first, first)?;
        let c2 = lookup(&self.second, second)?;
        let (Some(c1), Some(c2)) = (c1, c2) else {
            return Ok(None);
        };
        let used = c1.len() + c2.len();
        if used > self.width {
            return Ok(None);
        }
        let bits = (((c1.value() << c2.len()) | c2.value()) as u128) << (self.width - used);
        Ok(Some(EncodedWord {
            bits: bits as u64,
            width: self.width,
        }))
    }

    /// Inverse of [`encode`](Self::encode) on successfully encoded entries.
    /// Words outside the image of `encode` are rejected.
    pub fn decode(&self, word: &EncodedWord) -> Result<(usize, usize)> {
        if word.width != self.width {
            return Err(Error::WordLengthMismatch {
                found: word.width as usize,
                width: self.width,
            });
        }
        let (first, head) = (0..=self.width)
            .find_map(|len| self.first_index.get(&word.prefix(len)).map(|&i| (i, len)))
            .ok_or(Error::NoPrefixMatch)?;
        let residual = word.suffix(head);

        let second = match self.second.kind() {
            CodeKind::PaddingInvariant => {
                let &i = self
                    .second_index
                    .get(&residual.strip_trailing_zeros())
                    .ok_or(Error::UnknownResidual)?;
                let stored = self.second.word(i).expect("indexed words are assigned");
                if stored.len() > residual.len() {
                    return Err(Error::UnknownResidual);
                }
                i
            }
            _ => {
                let rest = residual.len();
                (0..=rest)
                    .find_map(|len| {
                        let candidate = if len == 0 {
                            Codeword::EMPTY
                        } else {
                            Codeword::new(residual.value() >> (rest - len), len)
                        };
                        let tail = Codeword::new(residual.value(), rest - len);
                        self.second_index
                            .get(&candidate)
                            .filter(|_| tail.value() == 0)
                            .copied()
                    })
                    .ok_or(Error::UnknownResidual)?
            }
        };
        Ok((first, second))
    }

    pub fn success_probability(&self, dist: &EntryDistribution) -> Result<f64> {
        success_probability(
            &self.first.lengths(),
            &self.second.lengths(),
            dist,
            self.width,
        )
    }

    pub fn to_doc(
        &self,
        labels1: &[String],
        labels2: &[String],
        p_success: Option<f64>,
    ) -> SchemeDoc {
        SchemeDoc {
            width: self.width,
            p_success,
            second_kind: self.second.kind(),
            first: self.first.to_doc(labels1, self.width),
            second: self.second.to_doc(labels2, self.width),
        }
    }
}

fn index_words(book: &Codebook, key: impl Fn(&Codeword) -> Codeword) -> HashMap<Codeword, usize> {
    book.words()
        .iter()
        .enumerate()
        .filter_map(|(i, w)| w.as_ref().map(|w| (key(w), i)))
        .collect()
}

fn lookup(book: &Codebook, index: usize) -> Result<Option<Codeword>> {
    if index >= book.len() {
        return Err(Error::IndexOutOfRange {
            index,
            len: book.len(),
        });
    }
    Ok(book.word(index).copied())
}

/// Mass of all entries whose two codeword lengths sum to at most `width`.
/// Unassigned elements never fit.
pub fn success_probability(
    lengths1: &LengthVector,
    lengths2: &LengthVector,
    dist: &EntryDistribution,
    width: u32,
) -> Result<f64> {
    check_aligned("first field lengths", lengths1, dist.first.len())?;
    check_aligned("second field lengths", lengths2, dist.second.len())?;
    let mut total = 0.0;
    for (l1, &p1) in lengths1.iter().zip(dist.first.probs()) {
        let Some(l1) = l1 else { continue };
        let mut row = 0.0;
        for (l2, &p2) in lengths2.iter().zip(dist.second.probs()) {
            if matches!(l2, Some(l2) if l1 + l2 <= width) {
                row += p2;
            }
        }
        total += p1 * row;
    }
    Ok(total)
}

pub(crate) fn check_aligned(what: &'static str, lengths: &LengthVector, n: usize) -> Result<()> {
    if lengths.len() != n {
        return Err(Error::DimensionMismatch {
            what,
            expected: n,
            found: lengths.len(),
        });
    }
    Ok(())
}

/// On-disk scheme: both codebooks, the width and the decoding discipline of
/// the second field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeDoc {
    #[serde(rename = "L")]
    pub width: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_success: Option<f64>,
    pub second_kind: CodeKind,
    pub first: CodebookDoc,
    pub second: CodebookDoc,
}

impl SchemeDoc {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme serializes")
    }

    pub fn to_scheme(&self) -> Result<EntryScheme> {
        EntryScheme::new(
            self.first.to_codebook(CodeKind::Prefix)?,
            self.second.to_codebook(self.second_kind)?,
            self.width,
        )
    }
}
