//! The exact counts A_q(X), M(x, q, r, t) and C(p, r, N).

use divexp::sieve::{count_aq, count_c, count_m};

fn main() -> divexp::Result<()> {
    for q in [2, 6, 30, 210] {
        println!("A_{q}(10^6) = {}", count_aq(q, 1_000_000)?);
    }
    let x = 1_000_000;
    for (q, r, t) in [(1, 0, 2), (1, 1, 2), (6, 0, 2), (30, 1, 4)] {
        println!("M({x}, {q}, {r}, {t}) = {}", count_m(x, q, r, t)?);
    }
    let n = 1_000_000;
    let counts: Vec<u64> = (0..5).map(|r| count_c(5, r, n)).collect::<Result<_, _>>()?;
    println!("C(5, r, {n}) for r = 0..4: {counts:?}");
    Ok(())
}
