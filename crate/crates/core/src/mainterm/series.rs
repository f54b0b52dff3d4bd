//! Truncated infinite series with explicit remainder bounds.
//!
//! Tails over powerful numbers use the explicit count `K(x) <= 3 sqrt(x)`;
//! partial summation then gives `sum_{q in K, q > X} 1/q <= 9 / sqrt(X)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{is_prime, ModulusContext};
use crate::error::{Error, Result};
use crate::expsum::{compensated_sum_real, CompensatedSum};
use crate::sieve::{enumerate_powerful, enumerate_qm};

/// A truncated series value together with a certified bound on what was dropped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedSeries {
    pub value: Complex64,
    pub tail_bound: f64,
    pub cutoff: u64,
    pub description: String,
}

impl TruncatedSeries {
    pub fn real(value: f64, tail_bound: f64, cutoff: u64, description: impl Into<String>) -> Self {
        Self { value: Complex64::new(value, 0.0), tail_bound, cutoff, description: description.into() }
    }

    /// Whether `exact` lies within the certified tail of this value.
    pub fn contains(&self, exact: Complex64) -> bool {
        (self.value - exact).norm() <= self.tail_bound
    }
}

pub const DEFAULT_ZETA_CUTOFF: u64 = 1_000_000;
const ZETA_SHORTCUT_FROM: u64 = 50;
/// Relative allowance for the rounding of a compensated partial sum.
const ROUNDING_SLACK: f64 = 4.0 * f64::EPSILON;

/// Bound on `sum_{q powerful, q > x} 1/q`.
pub fn powerful_reciprocal_tail(x: u64) -> f64 {
    9.0 / (x as f64).sqrt()
}

/// `zeta(m)` for integer `m >= 2` at the default cutoff.
pub fn zeta_int(m: u64) -> Result<TruncatedSeries> {
    zeta_int_with_cutoff(m, DEFAULT_ZETA_CUTOFF)
}

/// Partial sum `sum_{n <= x} n^{-m}` with tail `x^{1-m} / (m-1)` plus a few
/// ulps for rounding; for `m >= 50`
/// the value `1 + 2^{-m}` with tail `2 * 3^{-m}`.
pub fn zeta_int_with_cutoff(m: u64, x: u64) -> Result<TruncatedSeries> {
    if m < 2 {
        return Err(Error::Invalid(format!("zeta(m) needs m >= 2, got {m}")));
    }
    if x == 0 {
        return Err(Error::Zero);
    }
    let desc = format!("zeta({m})");
    if m >= ZETA_SHORTCUT_FROM {
        let m = m as i32;
        return Ok(TruncatedSeries::real(1.0 + 2f64.powi(-m), 2.0 * 3f64.powi(-m), 2, desc));
    }
    let e = -(m as i32);
    let value = compensated_sum_real((1..=x).rev().map(|n| (n as f64).powi(e)));
    let tail = (x as f64).powi(1 - m as i32) / (m - 1) as f64 + ROUNDING_SLACK * value;
    Ok(TruncatedSeries::real(value, tail, x, desc))
}

/// `H(r, m) = sum_{q in Q_m, tau(q) = r (mod m)} h(q)/q` for every residue `r`,
/// truncated at `q <= x`. Index `r` of the result holds `H(r, m)`.
pub fn h_series(ctx: &ModulusContext, x: u64) -> Result<Vec<TruncatedSeries>> {
    if x == 0 {
        return Err(Error::Invalid("cutoff must be >= 1".into()));
    }
    let entries = enumerate_qm(ctx.m, x)?;
    let mut bins = vec![CompensatedSum::new(); ctx.m as usize];
    for e in &entries {
        bins[e.tau_q_mod_m as usize].add(Complex64::new(e.h_q / e.q as f64, 0.0));
    }
    let tail = powerful_reciprocal_tail(x);
    Ok(bins
        .iter()
        .enumerate()
        .map(|(r, b)| TruncatedSeries {
            value: b.total(),
            tail_bound: tail,
            cutoff: x,
            description: format!("H({r},{})", ctx.m),
        })
        .collect())
}

/// `sum_{q in Q_m, q <= x} h(q)/q`, the sum of all residues of [`h_series`].
pub fn qm_weight(m: u64, x: u64) -> Result<f64> {
    Ok(compensated_sum_real(enumerate_qm(m, x)?.iter().map(|e| e.h_q / e.q as f64)))
}

/// `sum_{q powerful, q <= x} 1/q`.
pub fn powerful_reciprocal_sum(x: u64) -> Result<f64> {
    Ok(compensated_sum_real(enumerate_powerful(x)?.iter().map(|e| 1.0 / e.q as f64)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauCongTail {
    pub series: TruncatedSeries,
    /// `d^{-log(2)/2}`
    pub general_scale: f64,
    /// `2^{-d/2}`, reported when `d` is prime.
    pub prime_scale: Option<f64>,
}

/// `sum_{q powerful, d | tau(q)} 1/q` truncated at `q <= x`, with the
/// predicted decay scales for comparison.
pub fn tau_cong_tail(d: u64, x: u64) -> Result<TauCongTail> {
    if d < 2 {
        return Err(Error::Invalid(format!("modulus must be >= 2, got {d}")));
    }
    let entries = enumerate_powerful(x)?;
    let value = compensated_sum_real(entries.iter().filter(|e| e.tau % d == 0).map(|e| 1.0 / e.q as f64));
    Ok(TauCongTail {
        series: TruncatedSeries::real(
            value,
            powerful_reciprocal_tail(x),
            x,
            format!("sum 1/q, q powerful, {d} | tau(q)"),
        ),
        general_scale: (d as f64).powf(-std::f64::consts::LN_2 / 2.0),
        prime_scale: is_prime(d).then(|| 2f64.powf(-(d as f64) / 2.0)),
    })
}
