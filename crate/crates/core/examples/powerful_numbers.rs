//! Count powerful numbers and members of Q_m against the bound 3 sqrt(X).

use divexp::sieve::{enumerate_qm, powerful_count};

fn main() -> divexp::Result<()> {
    println!("{:>14} {:>10} {:>10} {:>10} {:>9}", "X", "K(X)", "Q_3(X)", "Q_5(X)", "K/sqrt X");
    for k in 2..=10 {
        let x = 10u64.pow(k);
        let kx = powerful_count(x)?;
        let q3 = enumerate_qm(3, x)?.len();
        let q5 = enumerate_qm(5, x)?.len();
        println!("{x:>14} {kx:>10} {q3:>10} {q5:>10} {:>9.5}", kx as f64 / (x as f64).sqrt());
    }
    Ok(())
}
