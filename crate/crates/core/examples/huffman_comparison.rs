// Huffman minimizes the expected length, not the chance of fitting.
//
// For two Zipf fields, compare per-field Huffman codes with the optimal
// scheme across word widths.

use fwcodec::baseline::{huffman, huffman_pair_success};
use fwcodec::opt_pair::optimal_pair_scheme;
use fwcodec::{ElementDistribution, EntryDistribution};

pub fn run_example() -> fwcodec::Result<()> {
    let dist = EntryDistribution::new(
        ElementDistribution::zipf(64, 0.8)?,
        ElementDistribution::zipf(64, 2.0)?,
    );
    println!(
        "Huffman expected lengths: {:.3} + {:.3} bits",
        huffman(&dist.first).expected_length,
        huffman(&dist.second).expected_length
    );
    println!(" L  optimal  huffman");
    for width in 2..=12 {
        let optimal = optimal_pair_scheme(&dist, width, false)?.p_success;
        let huff = huffman_pair_success(&dist, width)?;
        println!("{width:>2}  {optimal:.4}   {huff:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
