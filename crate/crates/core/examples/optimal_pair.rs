// Design the best two-code scheme for a word width and inspect the DP.
//
// The first field gets an optimal prefix code; the second field uses the
// universal code that writes `j - 1` least-significant bit first, relying
// on zero padding to recover it. The DP table is printed as CSV.

use fwcodec::opt_pair::optimal_pair_scheme;
use fwcodec::{ElementDistribution, EntryDistribution};

pub fn run_example() -> fwcodec::Result<()> {
    let dist = EntryDistribution::new(
        ElementDistribution::new(
            vec!["a", "b", "c", "d", "e"],
            vec![0.4, 0.3, 0.16, 0.08, 0.06],
        )?,
        ElementDistribution::new(vec!["x", "y", "z"], vec![0.5, 0.3, 0.2])?,
    );
    for width in 3..=5 {
        let solved = optimal_pair_scheme(&dist, width, false)?;
        println!(
            "L={width}: P_success={:.4} first={} second={}",
            solved.p_success,
            solved.lengths1(),
            solved.lengths2()
        );
    }

    let solved = optimal_pair_scheme(&dist, 4, true)?;
    let doc = solved.scheme.to_doc(
        dist.first.labels(),
        dist.second.labels(),
        Some(solved.p_success),
    );
    println!("{}", doc.to_json());
    if let Some(table) = &solved.table {
        print!("{}", table.to_csv());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
