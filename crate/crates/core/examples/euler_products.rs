//! The constants G(z) on the unit circle and G(chi) for the characters mod 7.

use divexp::arith::characters;
use divexp::expsum::root_of_unity;
use divexp::mainterm::{g_char, g_selberg, DEFAULT_PRIME_CUTOFF};

fn main() -> divexp::Result<()> {
    for k in 0..6 {
        let z = root_of_unity(k, 6);
        let g = g_selberg(z, DEFAULT_PRIME_CUTOFF)?;
        println!("G(e({k}/6)) = {:+.12}{:+.12}i  +- {:.1e}", g.value.re, g.value.im, g.tail_bound);
    }
    println!("6/pi^2     = {:.12}", 6.0 / std::f64::consts::PI.powi(2));
    let table = characters(7)?;
    for j in 0..table.order() {
        let g = g_char(&table, j, DEFAULT_PRIME_CUTOFF)?;
        println!("G(chi_{j} mod 7) = {:+.12}{:+.12}i  +- {:.1e}", g.value.re, g.value.im, g.tail_bound);
    }
    Ok(())
}
