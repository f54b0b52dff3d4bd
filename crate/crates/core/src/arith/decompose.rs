//! The `n = s q k` splitting of an integer relative to an odd modulus `m`:
//! `s` squarefree, `q` with every exponent in `[2, m-1]`, `k` a perfect
//! `m`-th power, and `gcd(s, q) = 1`. Under it `tau(n) = tau(s) tau(q) (mod m)`.

use super::factor::{factorize, Factorization};
use crate::error::{Error, Result};

/// Membership of one integer in the four exponent-pattern sets.
/// `1` belongs to all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Membership {
    /// squarefree
    pub in_s: bool,
    /// every exponent in `[2, m-1]`
    pub in_qm: bool,
    /// every exponent divisible by `m`
    pub in_mm: bool,
    /// powerful: every exponent at least 2
    pub in_k: bool,
}

pub fn classify(f: &Factorization, m: u64) -> Membership {
    let mut flags = Membership { in_s: true, in_qm: true, in_mm: true, in_k: true };
    for e in f.exponents().map(u64::from) {
        flags.in_s &= e == 1;
        flags.in_qm &= (2..m).contains(&e);
        flags.in_mm &= e % m == 0;
        flags.in_k &= e >= 2;
    }
    flags
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Decomposition {
    pub m: u64,
    pub s: u64,
    pub q: u64,
    pub k: u64,
}

impl Decomposition {
    pub fn n(&self) -> u64 {
        self.s * self.q * self.k
    }
}

pub(crate) fn check_odd_modulus(m: u64) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::BadModulus(m));
    }
    Ok(())
}

/// Splits `n` by exponent residues `beta = alpha mod m`: `beta = 1` goes to
/// `s`, `beta` in `[2, m-1]` goes to `q`, and `p^(alpha - beta)` to `k`.
pub fn decompose(n: u64, m: u64) -> Result<Decomposition> {
    check_odd_modulus(m)?;
    Ok(decompose_factored(&factorize(n)?, m))
}

pub fn decompose_factored(f: &Factorization, m: u64) -> Decomposition {
    let (mut s, mut q, mut k) = (1u64, 1u64, 1u64);
    for &(p, e) in f.factors() {
        let beta = u64::from(e) % m;
        let beta32 = beta as u32;
        match beta {
            0 => {}
            1 => s *= p,
            _ => q *= p.pow(beta32),
        }
        k *= p.pow(e - beta32);
    }
    Decomposition { m, s, q, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor::gcd;

    #[test]
    fn examples() {
        assert_eq!(decompose(1, 3).unwrap(), Decomposition { m: 3, s: 1, q: 1, k: 1 });
        assert_eq!(decompose(720, 3).unwrap(), Decomposition { m: 3, s: 10, q: 9, k: 8 });
        assert_eq!(decompose(64, 3).unwrap(), Decomposition { m: 3, s: 1, q: 1, k: 64 });
        assert_eq!(decompose(10, 4), Err(Error::BadModulus(4)));
        assert_eq!(decompose(10, 1), Err(Error::BadModulus(1)));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&factorize(9).unwrap(), 3);
        assert_eq!(c, Membership { in_s: false, in_qm: true, in_mm: false, in_k: true });
        let c = classify(&factorize(8).unwrap(), 3);
        assert_eq!(c, Membership { in_s: false, in_qm: false, in_mm: true, in_k: true });
        for m in [3, 5, 101] {
            let c = classify(&factorize(1).unwrap(), m);
            assert!(c.in_s && c.in_qm && c.in_mm && c.in_k);
        }
    }

    #[test]
    fn tau_congruence_small_range() {
        for m in [3u64, 5, 9] {
            for n in 1..5000 {
                let d = decompose(n, m).unwrap();
                assert_eq!(d.n(), n);
                assert_eq!(gcd(d.s, d.q), 1);
                let tn = factorize(n).unwrap().tau().unwrap();
                let ts = factorize(d.s).unwrap().tau().unwrap();
                let tq = factorize(d.q).unwrap().tau().unwrap();
                assert_eq!(tn % m, ts * tq % m, "n={n} m={m}");
            }
        }
    }
}
