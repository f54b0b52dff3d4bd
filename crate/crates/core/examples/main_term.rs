//! Main-term coefficient of T_{a,m}(N) with the per-residue series H(r, m).

use divexp::arith::ModulusContext;
use divexp::mainterm::{main_term, DEFAULT_SERIES_CUTOFF};

fn main() -> divexp::Result<()> {
    for m in [3u64, 5, 7, 9, 15] {
        let ctx = ModulusContext::new(m)?;
        let est = main_term(1, &ctx, DEFAULT_SERIES_CUTOFF)?;
        println!(
            "m = {m:>2} t = {:>2}  coefficient = {:+.10}{:+.10}i  +- {:.2e}",
            ctx.t, est.coefficient.re, est.coefficient.im, est.tail_bound
        );
        for term in est.per_residue.iter().filter(|t| t.h > 0.0) {
            println!("    H({}, {m}) = {:.10}  S = {:+.6}{:+.6}i", term.r, term.h, term.s.re, term.s.im);
        }
    }
    Ok(())
}
