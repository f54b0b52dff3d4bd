//! Error-envelope reports for T_{1,3}, T_{1,5} and the characters mod 5, printed as CSV.

use divexp::harness::{geometric_grid, run_char_check, run_envelope_prime, run_envelope_t, to_csv, HarnessOptions};
use divexp::mainterm::{DEFAULT_PRIME_CUTOFF, DEFAULT_SERIES_CUTOFF};

fn main() -> divexp::Result<()> {
    let opts = HarnessOptions::default();
    let grid = geometric_grid(10_000, 10_000_000, 10)?;
    let t = run_envelope_t(1, 3, &grid, DEFAULT_SERIES_CUTOFF, &opts)?;
    print!("{}", to_csv(&t)?);
    let p = run_envelope_prime(1, 5, &grid, DEFAULT_SERIES_CUTOFF, &opts)?;
    print!("{}", to_csv(&p)?);
    let c = run_char_check(5, &grid, DEFAULT_PRIME_CUTOFF, &opts)?;
    print!("{}", to_csv(&c)?);
    for rep in [&t, &p].into_iter().chain(&c.reports) {
        eprintln!("{:?}: max ratio {:.4}, bounded {}", rep.kind, rep.verdict.max_ratio, rep.verdict.bounded);
    }
    Ok(())
}
