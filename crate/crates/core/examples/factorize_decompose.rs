//! Factor a few integers and split them as n = s q k for several odd moduli.
//!
//! cargo run --example factorize_decompose -- 720 1000000007

use divexp::arith::{classify, decompose, factorize, omega, tau};

fn main() -> divexp::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let inputs = if args.is_empty() { vec![1, 64, 720, 2_305_843_009_213_693_951] } else { args };
    for n in inputs {
        let f = factorize(n)?;
        println!("{n} = {:?}  tau = {}  omega = {}", f.factors(), tau(&f)?, omega(&f));
        for m in [3, 5, 9] {
            let d = decompose(n, m)?;
            let mem = classify(&f, m);
            println!(
                "  m = {m}: s = {}, q = {}, k = {}  (in S: {}, in Q_m: {}, in K: {})",
                d.s, d.q, d.k, mem.in_s, mem.in_qm, mem.in_k
            );
        }
    }
    Ok(())
}
