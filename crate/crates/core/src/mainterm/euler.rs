//! Euler-product constants of the mean-value asymptotics.
//!
//! Both products converge absolutely: each local factor is `1 + O(p^-2)`.
//! They are evaluated as `exp(sum_p log factor_p)` with the principal branch
//! and the tail over `p > P` bounded by summing the per-prime log bounds over
//! all integers beyond `P`.

use num_complex::Complex64;

use super::gamma::recip_gamma;
use super::series::TruncatedSeries;
use crate::arith::CharacterTable;
use crate::error::{Error, Result};
use crate::expsum::CompensatedSum;
use crate::sieve::primes_up_to;

pub const MIN_PRIME_CUTOFF: u64 = 1_000;
pub const DEFAULT_PRIME_CUTOFF: u64 = 1_000_000;
const INNER_SERIES_EPS: f64 = 1e-18;

fn check_cutoff(p_max: u64) -> Result<()> {
    if p_max < MIN_PRIME_CUTOFF {
        return Err(Error::Invalid(format!("prime cutoff must be >= {MIN_PRIME_CUTOFF}, got {p_max}")));
    }
    if p_max >= crate::sieve::MAX_SIEVE_HI {
        return Err(Error::RangeLimit { lo: 2, hi: p_max, limit: crate::sieve::MAX_SIEVE_HI });
    }
    Ok(())
}

/// `(1 - 1/p)^z` on the principal branch.
fn principal_power_log(p: f64, z: Complex64) -> Complex64 {
    z * (-1.0 / p).ln_1p()
}

/// `G(z) = Gamma(z)^{-1} prod_p (1 + z/p)(1 - 1/p)^z`, truncated at `p <= p_max`.
///
/// For `|z| <= 1` each log factor is at most `1/(p(p-1))` in modulus, so the
/// omitted product lies within `exp(1/P) - 1` relative error. The reported
/// tail is the larger of that and `2/P`.
pub fn g_selberg(z: Complex64, p_max: u64) -> Result<TruncatedSeries> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::OutsideUnitDisk(z.norm()));
    }
    check_cutoff(p_max)?;
    let rg = recip_gamma(z);
    let desc = format!("G({:.6}{:+.6}i)", z.re, z.im);
    if rg == Complex64::new(0.0, 0.0) {
        return Ok(TruncatedSeries { value: rg, tail_bound: 0.0, cutoff: p_max, description: desc });
    }
    let mut log_sum = CompensatedSum::new();
    for p in primes_up_to(p_max) {
        let p = f64::from(p);
        log_sum.add((z / p).ln_1p_c() + principal_power_log(p, z));
    }
    let value = rg * log_sum.total().exp();
    let rel = (1.0 / p_max as f64).exp_m1();
    Ok(TruncatedSeries {
        value,
        tail_bound: (value.norm() * rel).max(2.0 / p_max as f64),
        cutoff: p_max,
        description: desc,
    })
}

/// `G(chi) = Gamma(chi(2))^{-1} prod_p (sum_{n>=0} chi(n+1) p^{-n}) (1 - 1/p)^{chi(2)}`
/// for `chi = chi_j` modulo the table's prime, truncated at `p <= p_max`.
///
/// The inner series stops once `p^{-n} < 1e-18`. Each log factor is at most
/// `2/((p-1)(p-2))` in modulus; the tail is the larger of the resulting
/// relative bound and `4/P`.
pub fn g_char(table: &CharacterTable, j: u64, p_max: u64) -> Result<TruncatedSeries> {
    table.validate(j)?;
    check_cutoff(p_max)?;
    let chi2 = table.value(j, 2);
    let rg = recip_gamma(chi2);
    let desc = format!("G(chi_{j} mod {})", table.p());
    let one = Complex64::new(1.0, 0.0);
    let mut log_sum = CompensatedSum::new();
    let primes = primes_up_to(p_max);
    for &p in &primes {
        let p = f64::from(p);
        let mut inner = CompensatedSum::new();
        inner.add(one);
        let mut weight = 1.0;
        let mut n = 1u64;
        loop {
            weight /= p;
            if weight < INNER_SERIES_EPS {
                break;
            }
            inner.add(table.value(j, n + 1) * weight);
            n += 1;
        }
        log_sum.add(inner.total().ln() + principal_power_log(p, chi2));
    }
    let value = rg * log_sum.total().exp();
    let pm = p_max as f64;
    let dropped = 2.0 / (pm - 2.0) + primes.len() as f64 * 2.0 * INNER_SERIES_EPS;
    Ok(TruncatedSeries {
        value,
        tail_bound: (value.norm() * dropped.exp_m1()).max(4.0 / pm),
        cutoff: p_max,
        description: desc,
    })
}

trait Ln1pComplex {
    fn ln_1p_c(self) -> Complex64;
}

impl Ln1pComplex for Complex64 {
    /// `log(1 + w)` without losing the low-order bits of small `w`.
    fn ln_1p_c(self) -> Complex64 {
        let w = self;
        // |1 + w|^2 = 1 + 2 re w + |w|^2
        let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
        let im = w.im.atan2(1.0 + w.re);
        Complex64::new(re, im)
    }
}
