//! Enumeration of powerful integers (all exponents >= 2) and of the subset
//! `Q_m` whose exponents all lie in `[2, m-1]`.
//!
//! Members are built by depth-first extension over primes in increasing
//! order; a branch stops once `p^2 > X / partial`, so the work is linear in the
//! output size, `O(sqrt X)`.

use super::{isqrt, primes_up_to};
use crate::arith::check_odd_modulus;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QmEntry {
    pub q: u64,
    /// `prod_{p | q} (1 + 1/p)^{-1}`
    pub h_q: f64,
    pub tau_q_mod_m: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PowerfulEntry {
    pub q: u64,
    pub tau: u64,
    pub omega: u32,
    pub h: f64,
}

/// Members of `Q_m` up to `x` in ascending order, starting with `q = 1`.
pub fn enumerate_qm(m: u64, x: u64) -> Result<Vec<QmEntry>> {
    check_odd_modulus(m)?;
    let max_e = u32::try_from(m - 1).unwrap_or(u32::MAX);
    Ok(enumerate(x, max_e)?.into_iter().map(|e| QmEntry { q: e.q, h_q: e.h, tau_q_mod_m: e.tau % m }).collect())
}

/// Powerful integers up to `x` in ascending order, starting with `1`.
pub fn enumerate_powerful(x: u64) -> Result<Vec<PowerfulEntry>> {
    enumerate(x, u32::MAX)
}

/// Number of powerful integers `<= x`.
pub fn powerful_count(x: u64) -> Result<u64> {
    Ok(enumerate_powerful(x)?.len() as u64)
}

fn enumerate(x: u64, max_e: u32) -> Result<Vec<PowerfulEntry>> {
    if x == 0 {
        return Err(Error::Zero);
    }
    if x > DEFAULT_ENUMERATION_CAP {
        return Err(Error::EnumerationCap { x, cap: DEFAULT_ENUMERATION_CAP });
    }
    let primes = primes_up_to(isqrt(x));
    let mut out = Vec::new();
    let mut stack = vec![(PowerfulEntry { q: 1, tau: 1, omega: 0, h: 1.0 }, 0usize)];
    while let Some((node, start)) = stack.pop() {
        out.push(node);
        let room = x / node.q;
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let p = u64::from(p);
            if p * p > room {
                break;
            }
            let h = node.h * (p as f64 / (p as f64 + 1.0));
            let mut pe = p * p;
            let mut e = 2u32;
            while e <= max_e {
                stack.push((
                    PowerfulEntry { q: node.q * pe, tau: node.tau * (u64::from(e) + 1), omega: node.omega + 1, h },
                    i + 1,
                ));
                match pe.checked_mul(p) {
                    Some(next) if next <= room => pe = next,
                    _ => break,
                }
                e += 1;
            }
        }
    }
    out.sort_unstable_by_key(|e| e.q);
    Ok(out)
}
