use super::{cumulative_scan, sieve_kernel, SieveConfig, OMEGA_SLOTS};
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// `#{ n <= x : every prime factor of n divides q }` for squarefree `q`, `n = 1` included.
pub fn count_aq(q: u64, x: u64) -> Result<u64> {
    let f = factorize(q)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(q));
    }
    if x == 0 {
        return Ok(0);
    }
    let primes: Vec<u64> = f.primes().collect();
    fn walk(primes: &[u64], partial: u64, x: u64) -> u64 {
        let mut total = 1;
        for (i, &p) in primes.iter().enumerate() {
            let mut v = partial;
            while let Some(next) = v.checked_mul(p).filter(|&n| n <= x) {
                v = next;
                total += walk(&primes[i + 1..], v, x);
            }
        }
        total
    }
    Ok(walk(&primes, 1, x))
}

/// Histograms of `tau(n) mod m` over `n <= c` for each checkpoint `c`.
pub fn tau_histogram(m: u64, checkpoints: &[u64], cfg: &SieveConfig) -> Result<Vec<Vec<u64>>> {
    crate::arith::check_odd_modulus(m)?;
    let m32 = u32::try_from(m).map_err(|_| Error::BadModulus(m))?;
    cumulative_scan(checkpoints, cfg, |lo, hi, primes| {
        let mut h = vec![0u64; m32 as usize];
        if m32 <= 1 << 8 {
            sieve_kernel::<u8, true, false>(lo, hi, m32, primes).tau.iter().for_each(|&r| h[r as usize] += 1);
        } else if m32 <= 1 << 16 {
            sieve_kernel::<u16, true, false>(lo, hi, m32, primes).tau.iter().for_each(|&r| h[r as usize] += 1);
        } else {
            sieve_kernel::<u32, true, false>(lo, hi, m32, primes).tau.iter().for_each(|&r| h[r as usize] += 1);
        }
        h
    })
}

/// Histograms of `omega(n)` over squarefree `n <= c` coprime to `q`, one per checkpoint.
pub(crate) fn squarefree_omega_histogram(q: u64, checkpoints: &[u64], cfg: &SieveConfig) -> Result<Vec<Vec<u64>>> {
    let q_primes: Vec<u64> = factorize(q)?.primes().collect();
    cumulative_scan(checkpoints, cfg, |lo, hi, primes| {
        let mut k = sieve_kernel::<u8, false, true>(lo, hi, 3, primes);
        for &p in &q_primes {
            let mut idx = (lo.div_ceil(p) * p - lo) as usize;
            while idx < k.squarefree.len() {
                k.squarefree[idx] = false;
                idx += p as usize;
            }
        }
        let mut h = vec![0u64; OMEGA_SLOTS];
        for (w, _) in k.omega.iter().zip(&k.squarefree).filter(|(_, &s)| s) {
            h[*w as usize] += 1;
        }
        h
    })
}

/// `#{ n <= x : n squarefree, omega(n) = r (mod t), gcd(n, q) = 1 }`.
pub fn count_m(x: u64, q: u64, r: i64, t: u64) -> Result<u64> {
    count_m_with(x, q, r, t, &SieveConfig::from_env()?)
}

pub fn count_m_with(x: u64, q: u64, r: i64, t: u64, cfg: &SieveConfig) -> Result<u64> {
    let h = squarefree_omega_histogram(q, &[x], cfg)?.pop().unwrap_or_default();
    Ok(m_from_histogram(&h, r, t))
}

pub(crate) fn m_from_histogram(h: &[u64], r: i64, t: u64) -> u64 {
    let r = r.rem_euclid(t as i64) as u64;
    h.iter().enumerate().filter(|(w, _)| *w as u64 % t == r).map(|(_, c)| c).sum()
}

/// Number of squarefree integers `<= x`.
pub fn squarefree_count(x: u64, cfg: &SieveConfig) -> Result<u64> {
    Ok(squarefree_omega_histogram(1, &[x], cfg)?.pop().unwrap_or_default().iter().sum())
}

/// `#{ n <= big_n : tau(n) = r (mod p) }` for an odd prime `p`.
pub fn count_c(p: u64, r: u64, big_n: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if r >= p {
        return Err(Error::Invalid(format!("residue {r} not reduced mod {p}")));
    }
    let h = tau_histogram(p, &[big_n], &SieveConfig::from_env()?)?;
    Ok(h[0][r as usize])
}
