// Success probability against word width for Zipf-distributed fields.
//
// Runs a small shared-code sweep and a two-code sweep with the Huffman and
// naive fixed-length comparators, printing the CSV rows. Set
// `FWCODEC_THREADS` to cap the worker pool.

use fwcodec::sweep::{run_sweep, to_csv, MuPoint, SweepConfig, SweepMode};

pub fn run_example() -> fwcodec::Result<()> {
    let shared = SweepConfig {
        mode: SweepMode::Shared,
        ns: vec![32],
        mus: vec![
            MuPoint { mu1: 0.5, mu2: 0.5 },
            MuPoint { mu1: 2.0, mu2: 2.0 },
        ],
        widths: 2..=8,
        huffman: true,
        naive_fixed: true,
        timing: false,
    };
    print!("{}", to_csv(&run_sweep(&shared)?));

    let pair = SweepConfig {
        mode: SweepMode::Pair,
        ns: vec![32],
        mus: vec![MuPoint { mu1: 0.8, mu2: 2.0 }],
        widths: 1..=10,
        huffman: true,
        naive_fixed: false,
        timing: false,
    };
    let rows = run_sweep(&pair)?;
    // skip the header the first table already printed
    print!(
        "{}",
        to_csv(&rows).split_once('\n').map_or("", |(_, rest)| rest)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
