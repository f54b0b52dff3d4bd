//! Closed-form constants of the asymptotics, each with a certified truncation
//! error: `zeta(m)`, `H(r, m)`, the main-term coefficient of `T_{a,m}(N)`,
//! the Euler products `G(z)` and `G(chi)`, the saving `A(t)`, and tail sums
//! over powerful numbers with `d | tau(q)`.

mod bounds;
mod euler;
mod gamma;
mod series;

pub use crate::arith::alpha;
pub use bounds::{a_bound, a_bound_conditions, a_bound_values, subgroup_envelope, ABound, SubgroupEnvelope};
pub use euler::{g_char, g_selberg, DEFAULT_PRIME_CUTOFF, MIN_PRIME_CUTOFF};
pub use gamma::{gamma, is_gamma_pole, recip_gamma};
pub use series::{
    h_series, powerful_reciprocal_sum, powerful_reciprocal_tail, qm_weight, tau_cong_tail, zeta_int,
    zeta_int_with_cutoff, TauCongTail, TruncatedSeries, DEFAULT_ZETA_CUTOFF,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{gcd, ModulusContext};
use crate::error::{Error, Result};
use crate::expsum::{compensated_sum, s_sum_with, RootTable};

/// Default truncation point for `H(r, m)` (tail at most `9e-4`).
pub const DEFAULT_SERIES_CUTOFF: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueTerm {
    pub r: u64,
    pub h: f64,
    /// `S_m(a r)`
    pub s: Complex64,
}

/// `T_{a,m}(N) ~ coefficient * N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainTermEstimate {
    pub a: i64,
    pub coefficient: Complex64,
    pub per_residue: Vec<ResidueTerm>,
    pub zeta: TruncatedSeries,
    /// Bound on `|coefficient - exact coefficient|`.
    pub tail_bound: f64,
    pub cutoff: u64,
    pub ctx: ModulusContext,
}

/// `(zeta(m) / t) (6 / pi^2) sum_r H(r, m) S_m(a r)` with `H` truncated at `x`.
///
/// All residues share one tail: the omitted `q > x` contribute at most
/// `max_r |S_m(a r)| * 9 / sqrt(x)` to the inner sum.
pub fn main_term(a: i64, ctx: &ModulusContext, x: u64) -> Result<MainTermEstimate> {
    let m = ctx.m;
    let a_red = a.rem_euclid(m as i64) as u64;
    if gcd(a_red, m) != 1 {
        return Err(Error::NotCoprime { b: a_red, m });
    }
    let h = h_series(ctx, x)?;
    let zeta = zeta_int(m)?;
    let roots = RootTable::new(m);
    let per_residue: Vec<ResidueTerm> = h
        .iter()
        .enumerate()
        .map(|(r, hr)| ResidueTerm { r: r as u64, h: hr.value.re, s: s_sum_with(&roots, ctx, a_red as i64 * r as i64) })
        .collect();
    let inner = compensated_sum(per_residue.iter().map(|t| t.s * t.h));
    let max_s = per_residue.iter().map(|t| t.s.norm()).fold(0.0, f64::max);
    let scale = 6.0 / (PI * PI) / ctx.t as f64;
    let z = zeta.value.re;
    let h_tail = powerful_reciprocal_tail(x);
    let tail_bound = scale * ((z + zeta.tail_bound) * max_s * h_tail + zeta.tail_bound * inner.norm());
    Ok(MainTermEstimate {
        a,
        coefficient: inner * (z * scale),
        per_residue,
        zeta,
        tail_bound,
        cutoff: x,
        ctx: ctx.clone(),
    })
}
