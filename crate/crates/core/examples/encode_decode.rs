// Encode and decode entries with a hand-built two-code scheme.
//
// The first field uses the prefix code (00, 01, 10, 110, 111) and the
// second the prefix code (0, 10, 11), in a 4-bit word. Every entry is
// encoded, failures are listed, and each word is decoded back.

use fwcodec::codebook::canonical_prefix_from_lengths;
use fwcodec::{ElementDistribution, EntryDistribution, EntryScheme, LengthVector};

pub fn run_example() -> fwcodec::Result<()> {
    let dist = EntryDistribution::new(
        ElementDistribution::new(
            vec!["a", "b", "c", "d", "e"],
            vec![0.4, 0.3, 0.16, 0.08, 0.06],
        )?,
        ElementDistribution::new(vec!["x", "y", "z"], vec![0.5, 0.3, 0.2])?,
    );
    let first = canonical_prefix_from_lengths(&LengthVector::from_lengths(&[2, 2, 2, 3, 3]))?;
    let second = canonical_prefix_from_lengths(&LengthVector::from_lengths(&[1, 2, 2]))?;
    let scheme = EntryScheme::new(first, second, 4)?;

    println!("entry  prob    word");
    for i in 0..dist.first.len() {
        for j in 0..dist.second.len() {
            let prob = dist.first.prob(i) * dist.second.prob(j);
            let entry = format!("({},{})", dist.first.label(i), dist.second.label(j));
            match scheme.encode(i, j)? {
                Some(word) => {
                    assert_eq!(scheme.decode(&word)?, (i, j));
                    println!("{entry:<6} {prob:<7.4} {word}");
                }
                None => println!("{entry:<6} {prob:<7.4} fail"),
            }
        }
    }
    println!("P_success = {:.4}", scheme.success_probability(&dist)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
