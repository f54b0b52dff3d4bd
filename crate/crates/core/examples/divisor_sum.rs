//! T_{a,m}(N) on a decade grid from one sieve pass, and the orbit sums S_m(r).
//!
//! cargo run --release --example divisor_sum -- 5 100000000

use divexp::arith::ModulusContext;
use divexp::expsum::{s_sum, t_exact_grid, EvalOptions};

fn main() -> divexp::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().ok());
    let m = args.next().flatten().unwrap_or(3);
    let top = args.next().flatten().unwrap_or(10_000_000);
    let ctx = ModulusContext::new(m)?;
    println!("m = {m}, t = {}, alpha_t = {}", ctx.t, ctx.alpha_t);
    for r in 0..m as i64 {
        let s = s_sum(&ctx, r);
        println!("S_{m}({r}) = {:.12}{:+.12}i", s.re, s.im);
    }
    let grid: Vec<u64> = std::iter::successors(Some(10u64), |n| Some(n * 10)).take_while(|&n| n <= top).collect();
    for res in t_exact_grid(1, m, &grid, &EvalOptions::from_env()?)? {
        println!(
            "T_1,{m}({}) = {:.6}{:+.6}i   |T|/N = {:.6}",
            res.n,
            res.value.re,
            res.value.im,
            res.value.norm() / res.n as f64
        );
    }
    Ok(())
}
