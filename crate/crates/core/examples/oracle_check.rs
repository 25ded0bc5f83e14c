// Cross-check the optimizers against exhaustive search on small inputs.
//
// Random distributions are drawn from a seeded generator; both the
// two-code and the shared optimizer must match brute force exactly.

use fwcodec::opt_pair::optimal_pair_scheme;
use fwcodec::opt_shared::optimal_shared_code;
use fwcodec::oracle::{brute_force_optimal_pair, brute_force_optimal_shared, random_distribution};
use fwcodec::EntryDistribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> fwcodec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let width = rng.gen_range(2..=6);
        let (n1, n2) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
        let dist = EntryDistribution::new(
            random_distribution(&mut rng, n1),
            random_distribution(&mut rng, n2),
        );
        let dp = optimal_pair_scheme(&dist, width, false)?.p_success;
        let (l1, l2, brute) = brute_force_optimal_pair(&dist, width)?;
        worst = worst.max((dp - brute).abs());
        println!("pair   n=({n1},{n2}) L={width}: dp {dp:.6} brute {brute:.6} via {l1} / {l2}");
    }
    for _ in 0..25 {
        let width = rng.gen_range(2..=7);
        let n = rng.gen_range(2..=8);
        let dist = random_distribution(&mut rng, n);
        let dp = optimal_shared_code(&dist, width)?;
        let (lengths, brute) = brute_force_optimal_shared(&dist, width)?;
        worst = worst.max((dp.p_success - brute).abs());
        println!(
            "shared n={n} L={width}: dp {:.6} {} brute {brute:.6} {lengths}",
            dp.p_success, dp.lengths
        );
    }
    println!("largest difference: {worst:e}");
    assert!(worst < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
