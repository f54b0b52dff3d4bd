//! Time the tau-mod-m histogram and squarefree count up to N on 1..=K threads.
//!
//! cargo run --release --example sieve_throughput -- 100000000 4

use std::time::Instant;

use divexp::sieve::{squarefree_count, tau_histogram, SieveConfig};

fn main() -> divexp::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(100_000_000);
    let max_threads = args.next().flatten().unwrap_or(1) as usize;
    let mut threads = 1;
    while threads <= max_threads {
        let cfg = SieveConfig::from_env()?.with_threads(threads)?;
        let start = Instant::now();
        let h = tau_histogram(3, &[n], &cfg)?;
        let tau_secs = start.elapsed().as_secs_f64();
        let start = Instant::now();
        let sf = squarefree_count(n, &cfg)?;
        println!(
            "threads {threads}: tau mod 3 histogram {:?} in {tau_secs:.2}s, {sf} squarefree in {:.2}s",
            h[0],
            start.elapsed().as_secs_f64()
        );
        threads *= 2;
    }
    Ok(())
}
