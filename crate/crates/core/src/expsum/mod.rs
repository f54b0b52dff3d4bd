//! Exact evaluation of the finite sums: `T_{a,m}(N)`, the orbit sums
//! `S_m(r)`, character sums over `tau`, squarefree sums of `z^omega(n)`, and
//! Gauss sums.
//!
//! Every bulk sum is reduced to an integer histogram (of `tau(n) mod m` or of
//! `omega(n)`) built by the segmented sieve, so floating point only enters in
//! one compensated combination of at most `m` terms.

mod kahan;
mod roots;

pub use kahan::{compensated_sum, compensated_sum_real, CompensatedSum};
pub use roots::{root_of_unity, RootTable};

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{check_odd_modulus, gcd, CharacterTable, ModulusContext};
use crate::error::{Error, Result};
use crate::sieve::{self, SieveConfig};

/// Options shared by the bulk evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    pub sieve: SieveConfig,
    /// Allow `gcd(a, m) > 1` in [`t_exact`].
    pub override_gcd: bool,
}

impl EvalOptions {
    pub fn from_env() -> Result<Self> {
        Ok(Self { sieve: SieveConfig::from_env()?, override_gcd: false })
    }
}

/// Value of `T_{a,m}(N)` with its evaluation parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumResult {
    /// `[re, im]`
    pub value: Complex64,
    pub a: i64,
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub n_terms: u64,
    pub segment_len: u64,
    /// Wall time; `None` when the caller wants reproducible output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
}

/// `S_m(r) = sum_{n=1}^{t} e_m(r 2^n)`; `r` need not be coprime to `m`.
pub fn s_sum(ctx: &ModulusContext, r: i64) -> Complex64 {
    s_sum_with(&RootTable::new(ctx.m), ctx, r)
}

/// [`s_sum`] reusing a root table for `ctx.m`.
pub fn s_sum_with(roots: &RootTable, ctx: &ModulusContext, r: i64) -> Complex64 {
    debug_assert_eq!(roots.modulus(), ctx.m);
    let r = roots::reduce(r, ctx.m);
    compensated_sum(ctx.pow2_residues.iter().map(|&x| roots.root(crate::arith::mul_mod(r, x, ctx.m))))
}

fn check_t_args(a: i64, m: u64, opts: &EvalOptions) -> Result<()> {
    check_odd_modulus(m)?;
    let a_red = roots::reduce(a, m);
    if !opts.override_gcd && gcd(a_red, m) != 1 {
        return Err(Error::NotCoprime { b: a_red, m });
    }
    Ok(())
}

/// Combines a `tau mod m` histogram into `sum_r count[r] e_m(a r)`.
pub fn combine_histogram(a: i64, m: u64, hist: &[u64]) -> Complex64 {
    let roots = RootTable::new(m);
    let a = roots::reduce(a, m);
    compensated_sum(hist.iter().enumerate().map(|(r, &c)| roots.root(crate::arith::mul_mod(a, r as u64, m)) * c as f64))
}

/// `T_{a,m}(N) = sum_{n <= N} e_m(a tau(n))`.
pub fn t_exact(a: i64, m: u64, n: u64, opts: &EvalOptions) -> Result<SumResult> {
    Ok(t_exact_grid(a, m, &[n], opts)?.remove(0))
}

/// [`t_exact`] at every point of an ascending grid, from a single sieve pass.
pub fn t_exact_grid(a: i64, m: u64, grid: &[u64], opts: &EvalOptions) -> Result<Vec<SumResult>> {
    check_t_args(a, m, opts)?;
    let start = Instant::now();
    let hists = sieve::tau_histogram(m, grid, &opts.sieve)?;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(grid
        .iter()
        .zip(hists)
        .map(|(&n, h)| SumResult {
            value: combine_histogram(a, m, &h),
            a,
            m,
            n,
            n_terms: n,
            segment_len: opts.sieve.segment_len(),
            elapsed_secs: Some(elapsed),
        })
        .collect())
}

/// `sum_{n <= x} chi_j(tau(n))`, with `chi(k) = 0` when `p | k`.
pub fn char_tau_sum(table: &CharacterTable, j: u64, x: u64, cfg: &SieveConfig) -> Result<Complex64> {
    Ok(char_tau_sum_grid(table, j, &[x], cfg)?.remove(0))
}

pub fn char_tau_sum_grid(table: &CharacterTable, j: u64, grid: &[u64], cfg: &SieveConfig) -> Result<Vec<Complex64>> {
    table.validate(j)?;
    let hists = sieve::tau_histogram(table.p(), grid, cfg)?;
    Ok(hists.iter().map(|h| char_combine(table, j, h)).collect())
}

/// `sum_k count[k] chi_j(k)` for a `tau mod p` histogram.
pub fn char_combine(table: &CharacterTable, j: u64, hist: &[u64]) -> Complex64 {
    compensated_sum(hist.iter().enumerate().skip(1).map(|(k, &c)| table.value(j, k as u64) * c as f64))
}

fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::OutsideUnitDisk(z.norm()));
    }
    Ok(())
}

/// `sum_{n <= x, n squarefree} z^omega(n)`, with `0^0 = 1`.
pub fn selberg_sum(z: Complex64, x: u64, cfg: &SieveConfig) -> Result<Complex64> {
    Ok(selberg_sum_grid(z, &[x], cfg)?.remove(0))
}

pub fn selberg_sum_grid(z: Complex64, grid: &[u64], cfg: &SieveConfig) -> Result<Vec<Complex64>> {
    check_disk(z)?;
    let hists = sieve::squarefree_omega_histogram(1, grid, cfg)?;
    Ok(hists.iter().map(|h| omega_combine(z, h)).collect())
}

/// `sum_w count[w] z^w` for an `omega` histogram.
pub fn omega_combine(z: Complex64, hist: &[u64]) -> Complex64 {
    let mut power = Complex64::new(1.0, 0.0);
    let mut acc = CompensatedSum::new();
    for &c in hist {
        acc.add(power * c as f64);
        power *= z;
    }
    acc.total()
}

/// `sum_{r=1}^{p-1} conj(chi_j(r)) e_p(a r)` for a nonprincipal `chi_j`.
pub fn gauss_sum(table: &CharacterTable, j: u64, a: i64) -> Result<Complex64> {
    table.validate(j)?;
    if table.is_principal(j) {
        return Err(Error::PrincipalCharacter);
    }
    let p = table.p();
    let a = roots::reduce(a, p);
    if a == 0 {
        return Err(Error::NotCoprime { b: a, m: p });
    }
    let additive = RootTable::new(p);
    let conj = table.conjugate(j);
    Ok(compensated_sum((1..p).map(|r| table.value(conj, r) * additive.root(a * r % p))))
}
