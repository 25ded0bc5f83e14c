// One prefix code for both fields, compared with a naive fixed-length code.
//
// Two frequent elements share most of the mass; giving them short
// codewords and the next eight 4-bit codewords beats splitting a 6-bit
// word evenly into two 3-bit fields.

use fwcodec::baseline::naive_fixed_shared_success;
use fwcodec::opt_shared::{length_sequence, optimal_shared_code};
use fwcodec::ElementDistribution;

pub fn run_example() -> fwcodec::Result<()> {
    let mut probs = vec![0.4, 0.4, 0.08];
    probs.extend(std::iter::repeat_n(0.01, 12));
    let dist = ElementDistribution::from_probs(probs)?;

    let width = 6;
    println!("length order: {:?}", length_sequence(width)?.lengths());
    let solved = optimal_shared_code(&dist, width)?;
    println!(
        "optimal lengths {} -> P_success {:.4}",
        solved.lengths, solved.p_success
    );
    for (label, word) in dist.labels().iter().zip(solved.code.words()) {
        match word {
            Some(w) => println!("  {label:>2}: {w}"),
            None => println!("  {label:>2}: -"),
        }
    }
    println!(
        "naive 3+3 bit split -> P_success {:.4}",
        naive_fixed_shared_success(&dist, width)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
