//! Sieve one segment, print a few entries, and round-trip it through the binary dump.

use divexp::sieve::{sieve_range, SieveSegment};

fn main() -> divexp::Result<()> {
    let (lo, hi, m) = (1_000_000_000 - 1_000, 1_000_000_001, 7);
    let seg = sieve_range(lo, hi, m)?;
    for n in (hi - 5)..hi {
        println!(
            "n = {n}: tau mod {m} = {}, omega = {}, squarefree = {}",
            seg.tau_mod_at(n),
            seg.omega_at(n),
            seg.is_squarefree(n)
        );
    }
    let mut buf = Vec::new();
    seg.write_dump(&mut buf)?;
    let back = SieveSegment::read_dump(buf.as_slice())?;
    println!("dump: {} bytes, round trip equal: {}", buf.len(), back == seg);
    Ok(())
}
