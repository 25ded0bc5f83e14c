//! Optimal single prefix code shared by both fields.
//!
//! The code cannot be built element by element, because the mass an element
//! earns depends on lengths not chosen yet. Instead codeword lengths are
//! admitted one at a time in a zig-zag order around `L/2`:
//!
//! ```text
//! L/2, L/2+1, L/2-1, L/2+2, L/2-2, ..., L-1, 1
//! ```
//!
//! A length admitted to the right of the centre is too long to pair with
//! anything admitted so far, so it only consumes budget and goes to the
//! least probable elements of a range. A length admitted to the left pairs
//! with everything admitted so far and goes to the most probable elements.
//! `G(layer, [a, b), N)` is the best self-paired mass of elements `a..b`
//! when all of them take lengths admitted up to `layer` and their weights
//! sum to at most `N`.
//!
//! For odd `L = 2m + 1` the first layer admits the pair `{m, m + 1}` at
//! once: only `(m + 1, m + 1)` pairs overflow, so the layer value is
//! `S^2 - T^2` with `T` the mass given length `m + 1`. The zig-zag then
//! continues with `m + 2, m - 1, m + 3, m - 2, ...`.

use rayon::prelude::*;

use crate::codebook::{
    canonical_prefix_from_lengths, ceil_log2, Codebook, LengthVector, MAX_WIDTH,
};
use crate::codec::success_probability;
use crate::distribution::{ElementDistribution, EntryDistribution};
use crate::error::{Error, Result};

/// Marks an infeasible cell; never added to.
const INVALID: f64 = f64::NEG_INFINITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLengths {
    /// Even width: every element of the range takes `L/2`.
    Single(u32),
    /// Odd width `2m + 1`: lengths `m` and `m + 1`.
    Pair(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Longer than every length so far.
    Right,
    /// Shorter than every length so far.
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub len: u32,
    pub direction: Direction,
}

/// Order in which the shared-code DP admits codeword lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSequence {
    pub base: BaseLengths,
    pub steps: Vec<Step>,
}

impl LengthSequence {
    /// All admitted lengths in order, base first.
    pub fn lengths(&self) -> Vec<u32> {
        let mut out = match self.base {
            BaseLengths::Single(l) => vec![l],
            BaseLengths::Pair(a, b) => vec![a, b],
        };
        out.extend(self.steps.iter().map(|s| s.len));
        out
    }
}

pub fn length_sequence(width: u32) -> Result<LengthSequence> {
    if width < 2 {
        return Err(Error::WidthTooSmall { width, min: 2 });
    }
    let half = width / 2;
    let (base, right_start, left_start) = if width.is_multiple_of(2) {
        (BaseLengths::Single(half), half + 1, half - 1)
    } else {
        (BaseLengths::Pair(half, half + 1), half + 2, half - 1)
    };
    let rights = (right_start..width).map(|len| Step {
        len,
        direction: Direction::Right,
    });
    let lefts = (1..=left_start).rev().map(|len| Step {
        len,
        direction: Direction::Left,
    });
    let steps = rights.zip(lefts).flat_map(|(r, l)| [r, l]).collect();
    Ok(LengthSequence { base, steps })
}

/// Result of [`optimal_shared_code`].
#[derive(Debug, Clone)]
pub struct SharedSolution {
    pub lengths: LengthVector,
    pub p_success: f64,
    pub code: Codebook,
}

/// `S^2`-style success of one code used for both fields.
pub fn shared_success_probability(
    lengths: &LengthVector,
    dist: &ElementDistribution,
    width: u32,
) -> Result<f64> {
    success_probability(
        lengths,
        lengths,
        &EntryDistribution::symmetric(dist.clone()),
        width,
    )
}

/// Triangular layout of all ranges `[a, b)` with `0 <= a <= b <= n`.
struct Ranges {
    n: usize,
    offsets: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl Ranges {
    fn new(n: usize) -> Self {
        let mut offsets = Vec::with_capacity(n + 1);
        let mut pairs = Vec::with_capacity((n + 1) * (n + 2) / 2);
        for a in 0..=n {
            offsets.push(pairs.len());
            pairs.extend((a..=n).map(|b| (a, b)));
        }
        Self { n, offsets, pairs }
    }

    fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a <= b && b <= self.n);
        self.offsets[a] + (b - a)
    }

    fn count(&self) -> usize {
        self.pairs.len()
    }
}

/// Optimal shared prefix code with lengths in `1..L`.
///
/// Ties prefer the smallest number of elements given the new length, and
/// the smallest number of coded elements overall.
pub fn optimal_shared_code(dist: &ElementDistribution, width: u32) -> Result<SharedSolution> {
    let sequence = length_sequence(width)?;
    if width > MAX_WIDTH {
        return Err(Error::WidthTooLarge {
            width,
            max: MAX_WIDTH,
        });
    }
    let n = dist.len();
    let fixed = ceil_log2(n).max(1);
    if width >= 2 * ceil_log2(n) {
        let lengths = LengthVector::from_lengths(&vec![fixed; n]);
        let code = canonical_prefix_from_lengths(&lengths)?;
        return Ok(SharedSolution {
            lengths,
            p_success: 1.0,
            code,
        });
    }
    if n > u16::MAX as usize {
        return Err(Error::Precondition(format!(
            "shared-code DP supports at most {} elements, got {n}",
            u16::MAX
        )));
    }

    let solver = SharedDp::new(dist, width, sequence);
    let (lengths, p_success) = solver.solve();
    let code = canonical_prefix_from_lengths(&lengths)?;
    Ok(SharedSolution {
        lengths,
        p_success,
        code,
    })
}

struct SharedDp {
    width: u32,
    cols: usize,
    ranges: Ranges,
    prefix: Vec<f64>,
    sequence: LengthSequence,
}

impl SharedDp {
    fn new(dist: &ElementDistribution, width: u32, sequence: LengthSequence) -> Self {
        Self {
            width,
            cols: (1usize << width) + 1,
            ranges: Ranges::new(dist.len()),
            prefix: dist.prefix_sums(),
            sequence,
        }
    }

    fn mass(&self, a: usize, b: usize) -> f64 {
        self.prefix[b] - self.prefix[a]
    }

    fn weight(&self, len: u32) -> usize {
        1usize << (self.width - len)
    }

    fn solve(&self) -> (LengthVector, f64) {
        let (mut layer, base_trace) = self.base_layer();
        let mut traces = Vec::with_capacity(self.sequence.steps.len());
        for step in &self.sequence.steps {
            let (next, trace) = self.advance(&layer, *step);
            layer = next;
            traces.push(trace);
        }

        let full = self.cols - 1;
        let n = self.ranges.n;
        let mut best = INVALID;
        let mut best_k = 0;
        for k in 1..=n {
            let v = layer[self.ranges.index(0, k) * self.cols + full];
            if v > best {
                best = v;
                best_k = k;
            }
        }
        let lengths = self.traceback(best_k, &traces, base_trace.as_deref());
        (lengths, best)
    }

    fn base_layer(&self) -> (Vec<f64>, Option<Vec<u16>>) {
        let cols = self.cols;
        let mut values = vec![INVALID; self.ranges.count() * cols];
        match self.sequence.base {
            BaseLengths::Single(len) => {
                let w = self.weight(len);
                values
                    .par_chunks_mut(cols)
                    .zip(&self.ranges.pairs)
                    .for_each(|(row, &(a, b))| {
                        let s = if a == b { 0.0 } else { self.mass(a, b) };
                        for cell in row.iter_mut().skip((b - a) * w) {
                            *cell = s * s;
                        }
                    });
                (values, None)
            }
            BaseLengths::Pair(short, long) => {
                let (ws, wl) = (self.weight(short), self.weight(long));
                let mut trace = vec![0u16; values.len()];
                values
                    .par_chunks_mut(cols)
                    .zip(trace.par_chunks_mut(cols))
                    .zip(&self.ranges.pairs)
                    .for_each(|((row, trow), &(a, b))| {
                        let size = b - a;
                        let s = self.mass(a, b);
                        for n in size * wl..cols {
                            let mut best = INVALID;
                            let mut pick = 0;
                            for j in 0..=size {
                                if j * ws + (size - j) * wl > n {
                                    break;
                                }
                                let t = self.mass(a + j, b);
                                let v = s * s - t * t;
                                if v > best {
                                    best = v;
                                    pick = j;
                                }
                            }
                            row[n] = best;
                            trow[n] = pick as u16;
                        }
                    });
                (values, Some(trace))
            }
        }
    }

    fn advance(&self, prev: &[f64], step: Step) -> (Vec<f64>, Vec<u16>) {
        let cols = self.cols;
        let w = self.weight(step.len);
        let mut values = vec![INVALID; prev.len()];
        let mut trace = vec![0u16; prev.len()];
        values
            .par_chunks_mut(cols)
            .zip(trace.par_chunks_mut(cols))
            .zip(&self.ranges.pairs)
            .for_each(|((row, trow), &(a, b))| {
                let size = b - a;
                let total = self.mass(a, b);
                for n in 0..cols {
                    let max_j = size.min(n / w);
                    let mut best = INVALID;
                    let mut pick = 0;
                    for j in 0..=max_j {
                        let rest = n - j * w;
                        let candidate = match step.direction {
                            Direction::Right => prev[self.ranges.index(a, b - j) * cols + rest],
                            Direction::Left => {
                                let inner = prev[self.ranges.index(a + j, b) * cols + rest];
                                if inner == INVALID {
                                    continue;
                                }
                                let head = self.mass(a, a + j);
                                inner + head * total + self.mass(a + j, b) * head
                            }
                        };
                        if candidate > best {
                            best = candidate;
                            pick = j;
                        }
                    }
                    row[n] = best;
                    trow[n] = pick as u16;
                }
            });
        (values, trace)
    }

    fn traceback(&self, k: usize, traces: &[Vec<u16>], base_trace: Option<&[u16]>) -> LengthVector {
        let mut lengths = vec![None; self.ranges.n];
        let (mut a, mut b, mut n) = (0, k, self.cols - 1);
        for (step, trace) in self.sequence.steps.iter().zip(traces).rev() {
            let j = trace[self.ranges.index(a, b) * self.cols + n] as usize;
            let span = match step.direction {
                Direction::Right => {
                    b -= j;
                    b..b + j
                }
                Direction::Left => {
                    a += j;
                    a - j..a
                }
            };
            for slot in &mut lengths[span] {
                *slot = Some(step.len);
            }
            n -= j * self.weight(step.len);
        }
        match self.sequence.base {
            BaseLengths::Single(len) => {
                for slot in &mut lengths[a..b] {
                    *slot = Some(len);
                }
            }
            BaseLengths::Pair(short, long) => {
                let j = base_trace.expect("odd width keeps a base trace")
                    [self.ranges.index(a, b) * self.cols + n] as usize;
                for (i, slot) in lengths[a..b].iter_mut().enumerate() {
                    *slot = Some(if i < j { short } else { long });
                }
            }
        }
        LengthVector::new(lengths)
    }
}
