//! Character table modulo a prime and the magnitudes of its Gauss sums.
//!
//! cargo run --example characters_gauss -- 13

use divexp::arith::characters;
use divexp::expsum::gauss_sum;

fn main() -> divexp::Result<()> {
    let p = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let table = characters(p)?;
    println!("p = {p}, primitive root {}", table.generator());
    for j in 0..table.order() {
        let chi2 = table.value(j, 2);
        let line = if table.is_principal(j) {
            "principal".to_string()
        } else {
            let g = gauss_sum(&table, j, 1)?;
            format!("|G| = {:.15}  sqrt(p) = {:.15}", g.norm(), (p as f64).sqrt())
        };
        println!("chi_{j}: chi(2) = {:.6}{:+.6}i  {line}", chi2.re, chi2.im);
    }
    Ok(())
}
