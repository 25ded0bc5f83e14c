//! Command-line front end.
//!
//! Exit status is 0 on success, 1 for invalid input or usage and 2 when a
//! solver or a self-test fails on valid input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::baseline::{huffman, naive_fixed_pair, top_fixed_lengths};
use crate::codebook::LengthVector;
use crate::codec::{success_probability, EncodedWord, EntryScheme, SchemeDoc};
use crate::distribution::{ElementDistribution, EntryDistribution};
use crate::error::{Error, Result};
use crate::opt_pair::optimal_pair_scheme;
use crate::opt_shared::optimal_shared_code;
use crate::oracle::{
    brute_force_optimal_pair, brute_force_optimal_shared, count_codes, random_distribution,
};
use crate::sweep::{run_sweep, to_csv, MuPoint, SweepConfig, SweepMode};

/// Tolerance used by the oracle self-tests.
const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "fwcodec",
    version,
    about = "Codes that maximize the probability a two-field entry fits in an L-bit word"
)]
struct Cli {
    /// Emit results as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal scheme with a separate code for each field.
    OptimizePair {
        #[command(flatten)]
        dists: PairDists,
        #[arg(long)]
        width: u32,
        /// Write the DP table as CSV to this file.
        #[arg(long, value_name = "FILE")]
        dump_table: Option<PathBuf>,
    },
    /// Optimal single code used for both fields.
    OptimizeShared {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        width: u32,
    },
    /// Encode one entry, given by its two labels.
    Encode {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        entry: Vec<String>,
    },
    /// Decode one L-bit word written as a 0/1 string.
    Decode {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Success probability of a stored scheme.
    Eval {
        #[arg(long)]
        scheme: PathBuf,
        #[command(flatten)]
        dists: OptionalPairDists,
    },
    /// Huffman and naive fixed-length comparators. Without `--dist2` both
    /// fields share one code.
    Baseline {
        #[command(flatten)]
        dists: OptionalPairDists,
        #[arg(long)]
        width: u32,
    },
    /// Number of monotone complete codes on N elements.
    CountCodes {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive two-code optimum for small inputs, or a randomized
    /// comparison against the optimizer.
    OraclePair {
        #[command(flatten)]
        dists: OptionalPairDists,
        #[arg(long)]
        width: Option<u32>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Exhaustive shared-code optimum for small inputs, or a randomized
    /// comparison against the optimizer.
    OracleShared {
        #[arg(long)]
        dist: Option<PathBuf>,
        #[arg(long)]
        width: Option<u32>,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Sweep Zipf distributions and word widths; prints CSV.
    Sweep {
        #[arg(long, value_parser = parse_mode)]
        mode: SweepMode,
        /// Element counts, comma separated.
        #[arg(long = "n", required = true, value_delimiter = ',')]
        ns: Vec<usize>,
        /// Zipf exponents, comma separated; `MU1:MU2` sets the two fields
        /// apart in pair mode.
        #[arg(long = "mu", required = true, value_delimiter = ',', value_parser = parse_mu)]
        mus: Vec<MuPoint>,
        #[arg(long)]
        l_min: u32,
        #[arg(long)]
        l_max: u32,
        #[arg(long)]
        huffman: bool,
        #[arg(long)]
        naive_fixed: bool,
        /// Record wall-clock milliseconds per row.
        #[arg(long)]
        timing: bool,
        /// Write the CSV here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct PairDists {
    #[arg(long)]
    dist1: PathBuf,
    #[arg(long)]
    dist2: PathBuf,
}

#[derive(Debug, Args)]
struct OptionalPairDists {
    #[arg(long)]
    dist1: Option<PathBuf>,
    /// Defaults to the first distribution.
    #[arg(long)]
    dist2: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RandomArgs {
    /// Compare the optimizer with brute force on this many random instances.
    #[arg(long, value_name = "COUNT")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_mode(s: &str) -> std::result::Result<SweepMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mu(s: &str) -> std::result::Result<MuPoint, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(':') {
        Some((a, b)) => Ok(MuPoint {
            mu1: num(a)?,
            mu2: num(b)?,
        }),
        None => {
            let mu = num(s)?;
            Ok(MuPoint { mu1: mu, mu2: mu })
        }
    }
}

/// What a command reports: plain text or a JSON document.
struct Report {
    text: String,
    json: Value,
    /// Exit status for a completed run; self-test mismatches report 2.
    status: i32,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            status: 0,
        }
    }
}

/// Parse `argv` (program name first) and run the command, writing to the
/// process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Like [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if status == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return status;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json")
                )
            } else if report.text.ends_with('\n') || report.text.is_empty() {
                write!(out, "{}", report.text)
            } else {
                writeln!(out, "{}", report.text)
            };
            report.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::OptimizePair {
            dists,
            width,
            dump_table,
        } => {
            let dist = EntryDistribution::new(
                ElementDistribution::load(&dists.dist1)?,
                ElementDistribution::load(&dists.dist2)?,
            );
            let solved = optimal_pair_scheme(&dist, width, dump_table.is_some())?;
            if let Some(path) = dump_table {
                let csv = solved.table.as_ref().map_or_else(
                    || "# every entry fits with fixed-length codes; no table\n".to_string(),
                    |t| t.to_csv(),
                );
                fs::write(path, csv)?;
            }
            let doc = solved.scheme.to_doc(
                dist.first.labels(),
                dist.second.labels(),
                Some(solved.p_success),
            );
            Ok(scheme_report(&doc))
        }
        Command::OptimizeShared { dist, width } => {
            let dist = ElementDistribution::load(&dist)?;
            let solved = optimal_shared_code(&dist, width)?;
            let scheme = EntryScheme::new(solved.code.clone(), solved.code, width)?;
            let doc = scheme.to_doc(dist.labels(), dist.labels(), Some(solved.p_success));
            Ok(scheme_report(&doc))
        }
        Command::Encode { scheme, entry } => {
            let doc = SchemeDoc::load(&scheme)?;
            let scheme = doc.to_scheme()?;
            let i1 = label_index(&doc.first.labels(), &entry[0])?;
            let i2 = label_index(&doc.second.labels(), &entry[1])?;
            Ok(match scheme.encode(i1, i2)? {
                Some(word) => Report::ok(word.to_string(), json!({ "word": word.to_string() })),
                None => Report::ok("fail", json!({ "word": null })),
            })
        }
        Command::Decode { scheme, word } => {
            let doc = SchemeDoc::load(&scheme)?;
            let scheme = doc.to_scheme()?;
            let (i1, i2) = scheme.decode(&EncodedWord::parse(&word, scheme.width())?)?;
            let (a, b) = (
                &doc.first.codewords[i1].label,
                &doc.second.codewords[i2].label,
            );
            Ok(Report::ok(
                format!("{a} {b}"),
                json!({ "first": a, "second": b }),
            ))
        }
        Command::Eval { scheme, dists } => {
            let doc = SchemeDoc::load(&scheme)?;
            let scheme = doc.to_scheme()?;
            let dist = load_pair(&dists)?;
            let p = success_probability(
                &aligned_lengths(&doc.first.labels(), scheme.first().lengths(), &dist.first)?,
                &aligned_lengths(
                    &doc.second.labels(),
                    scheme.second().lengths(),
                    &dist.second,
                )?,
                &dist,
                scheme.width(),
            )?;
            Ok(Report::ok(fmt_prob(p), json!({ "p_success": p })))
        }
        Command::Baseline { dists, width } => {
            let shared = dists.dist2.is_none();
            let dist = load_pair(&dists)?;
            let (h1, h2) = (huffman(&dist.first).lengths, huffman(&dist.second).lengths);
            let (n1, n2) = if shared {
                let l = top_fixed_lengths(dist.first.len(), width / 2);
                (l.clone(), l)
            } else {
                naive_fixed_pair(&dist, width)
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for (name, l1, l2) in [("huffman", h1, h2), ("naive-fixed", n1, n2)] {
                let p = success_probability(&l1, &l2, &dist, width)?;
                if shared {
                    text.push_str(&format!("{name} lengths={l1} p_success={}\n", fmt_prob(p)));
                    rows.push(
                        json!({ "scheme": name, "lengths": lengths_json(&l1), "p_success": p }),
                    );
                } else {
                    text.push_str(&format!(
                        "{name} lengths1={l1} lengths2={l2} p_success={}\n",
                        fmt_prob(p)
                    ));
                    rows.push(json!({
                        "scheme": name,
                        "lengths1": lengths_json(&l1),
                        "lengths2": lengths_json(&l2),
                        "p_success": p,
                    }));
                }
            }
            Ok(Report::ok(text, json!({ "L": width, "baselines": rows })))
        }
        Command::CountCodes { n } => {
            let z = count_codes(n)?;
            Ok(Report::ok(
                z.to_string(),
                json!({ "n": n, "count": z.to_string() }),
            ))
        }
        Command::OraclePair {
            dists,
            width,
            random,
        } => match random.random {
            Some(count) => Ok(pair_self_test(count, random.seed)),
            None => {
                let width = require_width(width)?;
                let dist = load_pair(&dists)?;
                let (l1, l2, p) = brute_force_optimal_pair(&dist, width)?;
                Ok(Report::ok(
                    format!("lengths1={l1} lengths2={l2} p_success={}", fmt_prob(p)),
                    json!({
                        "L": width,
                        "lengths1": lengths_json(&l1),
                        "lengths2": lengths_json(&l2),
                        "p_success": p,
                    }),
                ))
            }
        },
        Command::OracleShared {
            dist,
            width,
            random,
        } => match random.random {
            Some(count) => Ok(shared_self_test(count, random.seed)),
            None => {
                let width = require_width(width)?;
                let path = dist.ok_or_else(|| Error::Precondition("--dist is required".into()))?;
                let dist = ElementDistribution::load(path)?;
                let (l, p) = brute_force_optimal_shared(&dist, width)?;
                Ok(Report::ok(
                    format!("lengths={l} p_success={}", fmt_prob(p)),
                    json!({ "L": width, "lengths": lengths_json(&l), "p_success": p }),
                ))
            }
        },
        Command::Sweep {
            mode,
            ns,
            mus,
            l_min,
            l_max,
            huffman,
            naive_fixed,
            timing,
            out,
        } => {
            let config = SweepConfig {
                mode,
                ns,
                mus,
                widths: l_min..=l_max,
                huffman,
                naive_fixed,
                timing,
            };
            let rows = run_sweep(&config)?;
            let csv = to_csv(&rows);
            let json = json!(rows
                .iter()
                .map(|r| json!({
                    "mode": r.mode.as_str(),
                    "n1": r.n1,
                    "n2": r.n2,
                    "mu1": r.mu1,
                    "mu2": r.mu2,
                    "L": r.width,
                    "scheme": r.scheme.as_str(),
                    "p_success": r.p_success,
                    "wall_time_ms": r.wall_time_ms,
                }))
                .collect::<Vec<_>>());
            match out {
                Some(path) => {
                    fs::write(&path, csv)?;
                    Ok(Report::ok(
                        format!("wrote {} rows to {}", rows.len(), path.display()),
                        json,
                    ))
                }
                None => Ok(Report::ok(csv, json)),
            }
        }
    }
}

fn scheme_report(doc: &SchemeDoc) -> Report {
    let json = serde_json::to_value(doc).expect("scheme serializes");
    Report::ok(doc.to_json(), json)
}

fn require_width(width: Option<u32>) -> Result<u32> {
    width.ok_or_else(|| Error::Precondition("--width is required without --random".into()))
}

fn load_pair(dists: &OptionalPairDists) -> Result<EntryDistribution> {
    let path = dists
        .dist1
        .as_ref()
        .ok_or_else(|| Error::Precondition("--dist1 is required".into()))?;
    let first = ElementDistribution::load(path)?;
    Ok(match &dists.dist2 {
        Some(p) => EntryDistribution::new(first, ElementDistribution::load(p)?),
        None => EntryDistribution::symmetric(first),
    })
}

fn label_index(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// Reorder a codebook's lengths, keyed by label, to the order of `dist`.
fn aligned_lengths(
    labels: &[String],
    lengths: LengthVector,
    dist: &ElementDistribution,
) -> Result<LengthVector> {
    if labels.len() != dist.len() {
        return Err(Error::DimensionMismatch {
            what: "codebook labels",
            expected: dist.len(),
            found: labels.len(),
        });
    }
    let mut out = vec![None; dist.len()];
    for (label, len) in labels.iter().zip(lengths.iter()) {
        let i = dist
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        out[i] = len;
    }
    Ok(LengthVector::new(out))
}

fn lengths_json(l: &LengthVector) -> Value {
    json!(l.iter().collect::<Vec<_>>())
}

/// Probability rounded to 12 decimals with trailing zeros trimmed.
pub fn fmt_prob(p: f64) -> String {
    let s = format!("{p:.12}");
    let s = s.trim_end_matches('0');
    s.strip_suffix('.').unwrap_or(s).to_string()
}

fn random_width(rng: &mut ChaCha8Rng) -> u32 {
    rng.gen_range(2..=6)
}

fn pair_self_test(count: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..count {
        let n1 = rng.gen_range(2..=6);
        let n2 = rng.gen_range(2..=6);
        let width = random_width(&mut rng);
        let dist = EntryDistribution::new(
            random_distribution(&mut rng, n1),
            random_distribution(&mut rng, n2),
        );
        let outcome = optimal_pair_scheme(&dist, width, false)
            .and_then(|s| Ok((s.p_success, brute_force_optimal_pair(&dist, width)?.2)));
        record(
            &mut failures,
            trial,
            format!("n1={n1} n2={n2} L={width}"),
            outcome,
        );
    }
    self_test_report("pair", count, seed, failures)
}

fn shared_self_test(count: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..count {
        let n = rng.gen_range(2..=8);
        let width = random_width(&mut rng);
        let dist = random_distribution(&mut rng, n);
        let outcome = optimal_shared_code(&dist, width)
            .and_then(|s| Ok((s.p_success, brute_force_optimal_shared(&dist, width)?.1)));
        record(&mut failures, trial, format!("n={n} L={width}"), outcome);
    }
    self_test_report("shared", count, seed, failures)
}

fn record(failures: &mut Vec<String>, trial: usize, what: String, outcome: Result<(f64, f64)>) {
    match outcome {
        Ok((dp, brute)) if (dp - brute).abs() <= ORACLE_TOLERANCE => {}
        Ok((dp, brute)) => failures.push(format!(
            "trial {trial} ({what}): optimizer {dp}, brute force {brute}"
        )),
        Err(e) => failures.push(format!("trial {trial} ({what}): {e}")),
    }
}

fn self_test_report(kind: &str, count: usize, seed: u64, failures: Vec<String>) -> Report {
    let mut text = format!(
        "{kind} self-test: {count} instances, {} mismatches (seed {seed})\n",
        failures.len()
    );
    for f in &failures {
        text.push_str(f);
        text.push('\n');
    }
    Report {
        status: if failures.is_empty() { 0 } else { 2 },
        json: json!({ "kind": kind, "instances": count, "seed": seed, "mismatches": failures }),
        text,
    }
}
