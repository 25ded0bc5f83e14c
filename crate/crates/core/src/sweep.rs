//! Parameter sweeps over Zipf distributions, emitted as plot-ready CSV.
//!
//! Points run in a rayon pool whose size can be capped with the
//! `FWCODEC_THREADS` environment variable. Rows are sorted before they are
//! returned, so the output never depends on scheduling.

use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::baseline::{huffman, naive_fixed_pair, top_fixed_lengths};
use crate::codebook::LengthVector;
use crate::codec::success_probability;
use crate::distribution::{ElementDistribution, EntryDistribution};
use crate::error::{Error, Result};
use crate::opt_pair::optimal_pair_scheme;
use crate::opt_shared::optimal_shared_code;

/// Environment variable capping the sweep worker pool.
pub const THREADS_ENV: &str = "FWCODEC_THREADS";

pub const CSV_HEADER: &str = "mode,n1,n2,mu1,mu2,L,scheme,p_success,wall_time_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepMode {
    /// A separate code per field.
    Pair,
    /// One code for both fields.
    Shared,
}

impl SweepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::Pair => "pair",
            SweepMode::Shared => "shared",
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pair" => Ok(SweepMode::Pair),
            "shared" => Ok(SweepMode::Shared),
            other => Err(Error::Precondition(format!("unknown sweep mode {other:?}"))),
        }
    }
}

/// Scheme evaluated at a sweep point. The declaration order is the row
/// order within one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeName {
    OptimalPair,
    OptimalShared,
    Huffman,
    NaiveFixed,
}

impl SchemeName {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeName::OptimalPair => "optimal-pair",
            SchemeName::OptimalShared => "optimal-shared",
            SchemeName::Huffman => "huffman",
            SchemeName::NaiveFixed => "naive-fixed",
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Zipf exponents of one sweep point. Shared sweeps use only `mu1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuPoint {
    pub mu1: f64,
    pub mu2: f64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Element counts; pair sweeps use the same count for both fields.
    pub ns: Vec<usize>,
    pub mus: Vec<MuPoint>,
    pub widths: RangeInclusive<u32>,
    pub huffman: bool,
    pub naive_fixed: bool,
    /// Record wall-clock time per row. Off by default so that repeated
    /// runs produce identical bytes.
    pub timing: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() || self.mus.is_empty() || self.widths.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n == 0) {
            return Err(Error::Precondition(format!(
                "element count {n} must be positive"
            )));
        }
        if *self.widths.start() == 0 {
            return Err(Error::WidthTooSmall { width: 0, min: 1 });
        }
        for m in &self.mus {
            if !(m.mu1 >= 0.0 && m.mu2 >= 0.0 && m.mu1.is_finite() && m.mu2.is_finite()) {
                return Err(Error::Precondition(format!(
                    "Zipf exponents must be finite and nonnegative, got ({}, {})",
                    m.mu1, m.mu2
                )));
            }
        }
        Ok(())
    }

    fn schemes(&self) -> Vec<SchemeName> {
        let mut out = vec![match self.mode {
            SweepMode::Pair => SchemeName::OptimalPair,
            SweepMode::Shared => SchemeName::OptimalShared,
        }];
        if self.huffman {
            out.push(SchemeName::Huffman);
        }
        if self.naive_fixed {
            out.push(SchemeName::NaiveFixed);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub mode: SweepMode,
    pub n1: usize,
    /// Second field size; `None` in shared mode.
    pub n2: Option<usize>,
    pub mu1: f64,
    pub mu2: Option<f64>,
    pub width: u32,
    pub scheme: SchemeName,
    /// `None` when the solver failed at this point.
    pub p_success: Option<f64>,
    pub wall_time_ms: u64,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.mode,
            self.n1,
            opt(self.n2.map(|v| v.to_string())),
            self.mu1,
            opt(self.mu2.map(|v| v.to_string())),
            self.width,
            self.scheme,
            self.p_success
                .map_or_else(|| "error".to_string(), |p| p.to_string()),
            self.wall_time_ms,
        )
    }

    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.mode
            .cmp(&other.mode)
            .then(self.n1.cmp(&other.n1))
            .then(self.n2.cmp(&other.n2))
            .then(self.mu1.total_cmp(&other.mu1))
            .then(match (self.mu2, other.mu2) {
                (Some(a), Some(b)) => a.total_cmp(&b),
                (a, b) => a.is_some().cmp(&b.is_some()),
            })
            .then(self.width.cmp(&other.width))
            .then(self.scheme.cmp(&other.scheme))
    }
}

/// Lengths of the first and second field under one scheme.
fn scheme_lengths(
    mode: SweepMode,
    scheme: SchemeName,
    dist: &EntryDistribution,
    width: u32,
) -> Result<(LengthVector, LengthVector)> {
    Ok(match scheme {
        SchemeName::OptimalPair => {
            let s = optimal_pair_scheme(dist, width, false)?;
            (s.lengths1(), s.lengths2())
        }
        SchemeName::OptimalShared => {
            let s = optimal_shared_code(&dist.first, width)?;
            (s.lengths.clone(), s.lengths)
        }
        SchemeName::Huffman => (huffman(&dist.first).lengths, huffman(&dist.second).lengths),
        SchemeName::NaiveFixed if mode == SweepMode::Shared => {
            let l = top_fixed_lengths(dist.first.len(), width / 2);
            (l.clone(), l)
        }
        SchemeName::NaiveFixed => naive_fixed_pair(dist, width),
    })
}

/// Solve one scheme at one point and score the emitted lengths directly.
/// In shared mode the naive comparator is a single `floor(L/2)`-bit code.
pub fn evaluate_point(
    mode: SweepMode,
    scheme: SchemeName,
    dist: &EntryDistribution,
    width: u32,
) -> Result<f64> {
    let (l1, l2) = scheme_lengths(mode, scheme, dist, width)?;
    // summation error can push a full-coverage total a hair above one
    Ok(success_probability(&l1, &l2, dist, width)?.clamp(0.0, 1.0))
}

struct Point {
    n: usize,
    mu: MuPoint,
    width: u32,
    scheme: SchemeName,
}

/// Every requested (point, scheme) row, sorted by mode, n, mu, L, scheme.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let schemes = config.schemes();
    let mut points = Vec::new();
    for &n in &config.ns {
        for &mu in &config.mus {
            for width in config.widths.clone() {
                for &scheme in &schemes {
                    points.push(Point {
                        n,
                        mu,
                        width,
                        scheme,
                    });
                }
            }
        }
    }

    let run_point = |pt: &Point| -> SweepRow {
        let started = Instant::now();
        let p = build_distribution(config.mode, pt.n, pt.mu)
            .and_then(|dist| evaluate_point(config.mode, pt.scheme, &dist, pt.width));
        let elapsed = started.elapsed().as_millis() as u64;
        let pair = config.mode == SweepMode::Pair;
        SweepRow {
            mode: config.mode,
            n1: pt.n,
            n2: pair.then_some(pt.n),
            mu1: pt.mu.mu1,
            mu2: pair.then_some(pt.mu.mu2),
            width: pt.width,
            scheme: pt.scheme,
            p_success: p.ok(),
            wall_time_ms: if config.timing { elapsed } else { 0 },
        }
    };

    let mut rows: Vec<SweepRow> = match thread_cap() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Precondition(format!("cannot build worker pool: {e}")))?
            .install(|| points.par_iter().map(run_point).collect()),
        None => points.par_iter().map(run_point).collect(),
    };
    rows.sort_by(SweepRow::sort_key_cmp);
    Ok(rows)
}

fn build_distribution(mode: SweepMode, n: usize, mu: MuPoint) -> Result<EntryDistribution> {
    let first = ElementDistribution::zipf(n, mu.mu1)?;
    Ok(match mode {
        SweepMode::Shared => EntryDistribution::symmetric(first),
        SweepMode::Pair => EntryDistribution::new(first, ElementDistribution::zipf(n, mu.mu2)?),
    })
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
}

/// Header plus one LF-terminated line per row.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}
