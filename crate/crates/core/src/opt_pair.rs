//! Optimal two-code entry schemes.
//!
//! Given the second-field code, the best prefix code for the first field is
//! a knapsack over codeword weights: element `k` either stays out of the
//! code or takes a length `len` costing `2^(L - len)` units of the Kraft
//! budget `2^L`, and earns `p1[k]` times the second-field mass that still
//! fits beside it. `F(k, N)` is the best mass using the first `k` elements
//! within budget `N`.
//!
//! Pairing that DP with the universal second code (element `j` maps to
//! `j - 1` in LSB-first binary) gives the optimal scheme among all schemes
//! whose first code is prefix, because that second code lets the first
//! `2^(L - len)` second-field elements fit beside every length-`len` first
//! codeword.

use std::fmt::Write as _;

use crate::codebook::{
    canonical_prefix_from_lengths, ceil_log2, fixed_length_code, universal_second_code,
    universal_second_lengths, LengthVector, MAX_WIDTH,
};
use crate::codec::{check_aligned, EntryScheme};
use crate::distribution::{ElementDistribution, EntryDistribution};
use crate::error::{Error, Result};

/// `gain(len)`: second-field mass that fits next to a first-field codeword
/// of length `len`, for `len` in `1..=L`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondFieldGain {
    by_len: Vec<f64>,
}

impl SecondFieldGain {
    pub fn width(&self) -> u32 {
        (self.by_len.len() - 1) as u32
    }

    pub fn get(&self, len: u32) -> f64 {
        assert!(
            len >= 1 && len <= self.width(),
            "length {len} outside 1..=L"
        );
        self.by_len[len as usize]
    }
}

pub fn second_field_gain(
    lengths2: &LengthVector,
    second: &ElementDistribution,
    width: u32,
) -> Result<SecondFieldGain> {
    check_aligned("second field lengths", lengths2, second.len())?;
    check_width(width)?;
    // mass_upto[b] = mass of second-field elements with length <= b
    let mut mass_at = vec![0.0; width as usize + 1];
    for (len, &p) in lengths2.iter().zip(second.probs()) {
        if let Some(len) = len.filter(|&l| l <= width) {
            mass_at[len as usize] += p;
        }
    }
    let mut by_len = vec![0.0; width as usize + 1];
    let mut upto = 0.0;
    for room in 0..width {
        upto += mass_at[room as usize];
        by_len[(width - room) as usize] = upto;
    }
    Ok(SecondFieldGain { by_len })
}

/// Closed-form success of a first-field length vector against the universal
/// second code: each first element of length `len` fits with the first
/// `min(n2, 2^(L - len))` second-field elements.
pub fn universal_pair_success(
    lengths1: &LengthVector,
    dist: &EntryDistribution,
    width: u32,
) -> Result<f64> {
    check_aligned("first field lengths", lengths1, dist.first.len())?;
    let prefix = dist.second.prefix_sums();
    let n2 = dist.second.len();
    Ok(lengths1
        .iter()
        .zip(dist.first.probs())
        .filter_map(|(len, &p)| {
            let len = len.filter(|&l| l <= width)?;
            let room = width - len;
            let fits = if room >= usize::BITS - 1 {
                n2
            } else {
                n2.min(1usize << room)
            };
            Some(p * prefix[fits])
        })
        .sum())
}

/// The `F`/`Q` table of the conditional DP.
///
/// The traceback choice of every cell is always kept (one byte per cell);
/// the `F` values of every row are kept only when requested.
#[derive(Debug, Clone)]
pub struct DpTableF {
    width: u32,
    rows: usize,
    budget: usize,
    choice: Vec<u8>,
    values: Option<Vec<f64>>,
}

const NO_CODEWORD: u8 = 0;

impl DpTableF {
    /// Number of first-field elements.
    pub fn elements(&self) -> usize {
        self.rows
    }

    /// `2^L`.
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `F(k, n)`. `None` for negative budgets, which are infeasible.
    ///
    /// Panics when the table was built without values.
    pub fn value(&self, k: usize, n: i64) -> Option<f64> {
        let values = self.values.as_ref().expect("table built without values");
        if n < 0 {
            return None;
        }
        assert!(k <= self.rows && n as usize <= self.budget);
        Some(values[k * (self.budget + 1) + n as usize])
    }

    pub fn has_values(&self) -> bool {
        self.values.is_some()
    }

    /// Length chosen for element `k` (1-based) in cell `(k, n)`.
    pub fn choice(&self, k: usize, n: usize) -> Option<u32> {
        assert!(k >= 1 && k <= self.rows && n <= self.budget);
        match self.choice[(k - 1) * (self.budget + 1) + n] {
            NO_CODEWORD => None,
            len => Some(len as u32),
        }
    }

    /// `Q(k, n)`: lengths of the first `k` elements in an optimal solution
    /// of cell `(k, n)`.
    pub fn lengths_at(&self, k: usize, n: usize) -> LengthVector {
        let mut lengths = vec![None; k];
        let mut budget = n;
        for row in (1..=k).rev() {
            let choice = self.choice(row, budget);
            if let Some(len) = choice {
                budget -= 1usize << (self.width - len);
            }
            lengths[row - 1] = choice;
        }
        LengthVector::new(lengths)
    }

    /// CSV with one row per budget `N` and an `F`, `Q` column pair per `k`.
    /// Cells whose value does not improve on `N - 1` in the same column are
    /// left blank, like a hand-written table.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N");
        for k in 1..=self.rows {
            write!(out, ",F(k={k}),Q(k={k})").unwrap();
        }
        out.push('\n');
        for n in 0..=self.budget {
            write!(out, "{n}").unwrap();
            for k in 1..=self.rows {
                let v = self.value(k, n as i64).unwrap();
                let improves = n == 0 || v > self.value(k, n as i64 - 1).unwrap();
                if improves {
                    write!(out, ",{},\"{}\"", format_prob(v), self.lengths_at(k, n)).unwrap();
                } else {
                    out.push_str(",,");
                }
            }
            out.push('\n');
        }
        out
    }
}

fn format_prob(v: f64) -> String {
    // twelve decimals hide binary64 noise such as 0.8280000000000001
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}

/// Result of [`optimal_conditional_prefix`].
#[derive(Debug, Clone)]
pub struct ConditionalSolution {
    /// First-field lengths from the traceback of `F(n1, 2^L)`.
    pub lengths: LengthVector,
    pub p_success: f64,
    pub table: DpTableF,
}

/// Best prefix code for the first field given the second field's lengths.
///
/// Ties prefer leaving the element out, then the longest codeword.
pub fn optimal_conditional_prefix(
    dist: &EntryDistribution,
    width: u32,
    lengths2: &LengthVector,
    keep_values: bool,
) -> Result<ConditionalSolution> {
    check_width(width)?;
    let gain = second_field_gain(lengths2, &dist.second, width)?;
    let n1 = dist.first.len();
    let budget = 1usize << width;
    let cols = budget + 1;

    let mut prev = vec![0.0f64; cols];
    let mut cur = vec![0.0f64; cols];
    let mut choice = vec![NO_CODEWORD; n1 * cols];
    let mut values = keep_values.then(|| {
        let mut v = Vec::with_capacity((n1 + 1) * cols);
        v.extend_from_slice(&prev);
        v
    });

    for k in 0..n1 {
        let p = dist.first.prob(k);
        let row = &mut choice[k * cols..(k + 1) * cols];
        for n in 0..cols {
            let mut best = prev[n];
            let mut pick = NO_CODEWORD;
            for len in (1..=width).rev() {
                let weight = 1usize << (width - len);
                // F(k-1, n - weight) is -inf for negative budgets
                if weight > n {
                    break;
                }
                let candidate = prev[n - weight] + p * gain.get(len);
                if candidate > best {
                    best = candidate;
                    pick = len as u8;
                }
            }
            cur[n] = best;
            row[n] = pick;
        }
        if let Some(v) = values.as_mut() {
            v.extend_from_slice(&cur);
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    let table = DpTableF {
        width,
        rows: n1,
        budget,
        choice,
        values,
    };
    let lengths = if n1 == 0 {
        LengthVector::default()
    } else {
        table.lengths_at(n1, budget)
    };
    Ok(ConditionalSolution {
        lengths,
        p_success: prev[budget],
        table,
    })
}

/// An optimal two-code scheme and its success probability.
#[derive(Debug, Clone)]
pub struct PairSolution {
    pub scheme: EntryScheme,
    pub p_success: f64,
    /// Present when the DP ran; `None` on the fixed-length fast path.
    pub table: Option<DpTableF>,
}

impl PairSolution {
    pub fn lengths1(&self) -> LengthVector {
        self.scheme.first().lengths()
    }

    pub fn lengths2(&self) -> LengthVector {
        self.scheme.second().lengths()
    }
}

/// Optimal scheme with a prefix first code.
///
/// When `L >= max(ceil(log2 n1), 1) + ceil(log2 n2)` two fixed-length codes fit
/// every entry. Otherwise the first code comes from the conditional DP run
/// against the universal second code.
pub fn optimal_pair_scheme(
    dist: &EntryDistribution,
    width: u32,
    keep_table: bool,
) -> Result<PairSolution> {
    check_width(width)?;
    let (n1, n2) = (dist.first.len(), dist.second.len());
    // first-field codewords are never empty, even for a single element
    let fixed1 = ceil_log2(n1).max(1);
    if width >= fixed1 + ceil_log2(n2) {
        let first = canonical_prefix_from_lengths(&LengthVector::from_lengths(&vec![fixed1; n1]))?;
        let scheme = EntryScheme::new(first, fixed_length_code(n2), width)?;
        return Ok(PairSolution {
            scheme,
            p_success: 1.0,
            table: None,
        });
    }

    let lengths2 = universal_second_lengths(n2);
    let solved = optimal_conditional_prefix(dist, width, &lengths2, keep_table)?;
    let first = canonical_prefix_from_lengths(&solved.lengths.to_monotone())?;
    let scheme = EntryScheme::new(first, universal_second_code(n2), width)?;
    Ok(PairSolution {
        scheme,
        p_success: solved.p_success,
        table: Some(solved.table),
    })
}

pub(crate) fn check_width(width: u32) -> Result<()> {
    if width == 0 {
        return Err(Error::WidthTooSmall { width, min: 1 });
    }
    if width > MAX_WIDTH {
        return Err(Error::WidthTooLarge {
            width,
            max: MAX_WIDTH,
        });
    }
    Ok(())
}
