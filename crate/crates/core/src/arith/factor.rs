//! Prime factorization of 64-bit integers.
//!
//! Small factors are removed by trial division, the remaining cofactor is
//! tested with a deterministic Miller-Rabin witness set (exact below 2^64) and
//! split with Pollard's rho using Brent's cycle detection.

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 10;
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Prime factorization of a positive integer: strictly increasing primes,
/// each with a positive exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, validating order,
    /// exponents and the product. Primality of the bases is the caller's promise.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut last = 1;
        for &(p, e) in &factors {
            if p <= last || e == 0 {
                return Err(Error::Invalid(format!("bad factor list {factors:?}")));
            }
            last = p;
            let pe = p.checked_pow(e).ok_or(Error::Overflow("factorization product"))?;
            n = n.checked_mul(pe).ok_or(Error::Overflow("factorization product"))?;
        }
        Ok(Self { n, factors })
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(n: u64, factors: Vec<(u64, u32)>) -> Self {
        Self { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, e)| e)
    }

    /// Number of divisors, `prod (e + 1)`. Overflow is reported, never wrapped.
    pub fn tau(&self) -> Result<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &(_, e)| acc.checked_mul(u64::from(e) + 1).ok_or(Error::Overflow("tau")))
    }

    /// `tau(n) mod m` without forming `tau(n)`.
    pub fn tau_mod(&self, m: u64) -> u64 {
        self.factors.iter().fold(1 % m, |acc, &(_, e)| mul_mod(acc, (u64::from(e) + 1) % m, m))
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }
}

/// Factorizes `n`; rejects 0.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut factors = Vec::new();
    let mut rest = n;

    let tz = rest.trailing_zeros();
    if tz > 0 {
        factors.push((2, tz));
        rest >>= tz;
    }
    let mut d = 3;
    while d < TRIAL_LIMIT && d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 2;
    }
    if rest > 1 {
        if d * d > rest {
            factors.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split_large(rest, &mut big);
            big.sort_unstable();
            for p in big {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Ok(Factorization { n, factors })
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_sqrt(n) {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = pollard_brent(n, c) {
            break d;
        }
        c += 1;
    };
    split_large(d, out);
    split_large(n / d, out);
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// One Brent-rho attempt with polynomial `x^2 + c`; `None` if the walk
/// collapsed onto `n` itself.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2 % n;
    let mut x = y;
    let mut ys = y;
    let mut g = 1;
    let mut q = 1;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Deterministic primality test for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(720).unwrap().factors(), &[(2, 4), (3, 2), (5, 1)]);
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn mersenne_61_is_prime() {
        let n = (1u64 << 61) - 1;
        assert!(is_prime(n));
        assert_eq!(factorize(n).unwrap().factors(), &[(n, 1)]);
    }

    #[test]
    fn large_semiprimes_and_powers() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        assert_eq!(factorize(p * p).unwrap().factors(), &[(p, 2)]);
        let r = 1_000_003u64;
        let f = factorize(r * r * r).unwrap();
        assert_eq!(f.factors(), &[(r, 3)]);
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.factors(), &[(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)]);
    }

    #[test]
    fn tau_and_omega() {
        assert_eq!(factorize(1).unwrap().tau(), Ok(1));
        assert_eq!(factorize(12).unwrap().tau(), Ok(6));
        assert_eq!(factorize(720).unwrap().tau(), Ok(30));
        assert_eq!(factorize(1).unwrap().omega(), 0);
        assert_eq!(factorize(720).unwrap().omega(), 3);
        assert_eq!(factorize(97).unwrap().omega(), 1);
        assert_eq!(factorize(720).unwrap().tau_mod(7), 2);
    }

    #[test]
    fn tau_overflow_is_reported() {
        // 64 distinct "primes" with exponent 2^20: tau = (2^20 + 1)^64 cannot fit.
        let f = Factorization::from_parts_unchecked(0, (0..64).map(|i| (i + 2, 1 << 20)).collect());
        assert_eq!(f.tau(), Err(Error::Overflow("tau")));
    }

    #[test]
    fn from_pairs_validates() {
        assert_eq!(Factorization::from_pairs(vec![(2, 4), (3, 2), (5, 1)]).unwrap().n(), 720);
        assert!(Factorization::from_pairs(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 0)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 64)]).is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000u64 {
            let naive = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
        // strong pseudoprimes to several small bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }
}
