//! The saving A(t) with t = ord_2(p) for primes in a range, with the selected branch.
//!
//! cargo run --example saving_table -- 1000 1100

use divexp::arith::{is_prime, multiplicative_order};
use divexp::mainterm::a_bound;

fn main() -> divexp::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let lo = args.next().flatten().unwrap_or(3);
    let hi = args.next().flatten().unwrap_or(200);
    for p in (lo.max(3)..=hi).filter(|&p| is_prime(p)) {
        let t = multiplicative_order(2, p)?;
        let b = a_bound(p, t)?;
        let branch = b.branch.map_or("-".to_string(), |x| x.to_string());
        println!("p = {p:>6} t = {t:>6} branch {branch} A = {:.6}", b.value);
    }
    Ok(())
}
