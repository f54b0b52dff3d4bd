//! Dirichlet characters modulo an odd prime.
//!
//! With a primitive root `g` and discrete logs `ind(r)`, the characters are
//! `chi_j(r) = e(j ind(r) / (p - 1))` for `j = 0..p-1`, `chi_0` principal.
//! Values are kept as exponents of a `(p-1)`-th root of unity and only turned
//! into complex numbers at summation time.

use num_complex::Complex64;

use super::factor::{factorize, is_prime, pow_mod};
use crate::error::{Error, Result};
use crate::expsum::RootTable;

/// Largest prime accepted; the discrete-log table holds one `u32` per residue.
pub const MAX_CHARACTER_PRIME: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    p: u64,
    g: u64,
    /// `logs[r]` is the discrete log of `r` to base `g`; `logs[0]` is unused.
    logs: Vec<u32>,
    roots: RootTable,
}

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let phi = p - 1;
    let primes: Vec<u64> = factorize(phi)?.primes().collect();
    (2..p).find(|&g| primes.iter().all(|&q| pow_mod(g, phi / q, p) != 1)).ok_or(Error::NotOddPrime(p))
}

/// Builds the full character table modulo the odd prime `p`.
pub fn characters(p: u64) -> Result<CharacterTable> {
    if p > MAX_CHARACTER_PRIME {
        return Err(Error::Invalid(format!("character modulus {p} exceeds {MAX_CHARACTER_PRIME}")));
    }
    let g = primitive_root(p)?;
    let mut logs = vec![0u32; p as usize];
    let mut x = 1u64;
    for k in 0..(p - 1) {
        logs[x as usize] = k as u32;
        x = x * g % p;
    }
    Ok(CharacterTable { p, g, logs, roots: RootTable::new(p - 1) })
}

impl CharacterTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Number of characters, `p - 1`.
    pub fn order(&self) -> u64 {
        self.p - 1
    }

    pub fn log(&self, r: u64) -> Option<u64> {
        let r = r % self.p;
        (r != 0).then(|| u64::from(self.logs[r as usize]))
    }

    fn check_index(&self, j: u64) -> Result<()> {
        if j >= self.order() {
            return Err(Error::CharacterIndex { j, p: self.p });
        }
        Ok(())
    }

    /// `chi_j(r)` as the exponent `k` of `e(k / (p - 1))`, or `None` when `p | r`.
    pub fn value_index(&self, j: u64, r: u64) -> Option<u64> {
        self.log(r).map(|l| (j * l) % self.order())
    }

    pub fn value(&self, j: u64, r: u64) -> Complex64 {
        match self.value_index(j, r) {
            Some(k) => self.roots.root(k),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Checked variant of [`value`](Self::value).
    pub fn eval(&self, j: u64, r: u64) -> Result<Complex64> {
        self.check_index(j)?;
        Ok(self.value(j, r))
    }

    /// Index of the conjugate character.
    pub fn conjugate(&self, j: u64) -> u64 {
        (self.order() - j % self.order()) % self.order()
    }

    pub fn is_principal(&self, j: u64) -> bool {
        j.is_multiple_of(self.order())
    }

    pub(crate) fn validate(&self, j: u64) -> Result<()> {
        self.check_index(j)
    }
}
