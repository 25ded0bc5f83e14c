// Count and list monotone complete prefix codes.
//
// The count grows exponentially, which is why the optimizers use dynamic
// programming instead of trying every code.

use fwcodec::oracle::{count_codes, enumerate_monotone_vectors, KraftMode, DEFAULT_CAP};

pub fn run_example() -> fwcodec::Result<()> {
    for n in 1..=6 {
        let set = enumerate_monotone_vectors(n, n as u32, KraftMode::Equality, DEFAULT_CAP)?;
        let listed: Vec<String> = set.vectors.iter().map(|v| format!("{v:?}")).collect();
        println!("n={n}: {}", listed.join(" "));
    }
    for n in [10, 20, 40, 64] {
        println!("Z_{n} = {}", count_codes(n)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fwcodec::Result<()> {
    run_example()
}
