//! Error-envelope experiments and the invariant self-test.
//!
//! Every experiment compares an exact count or sum against its predicted main
//! term on an ascending grid and reports `ratio = residual / envelope` per row.
//! A report is *bounded* when the largest ratio over the upper half of the
//! grid stays at or below a ceiling; the implied constants are unknown, so the
//! ceiling is a configurable measurement threshold, not a proven constant.

mod report;
mod selftest;

pub use report::{to_csv, to_json, CsvTable};
pub use selftest::{selftest, CheckOutcome, SelftestReport};

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{alpha, factorize, is_prime, ModulusContext};
use crate::error::{Error, Result};
use crate::expsum::{char_combine, gauss_sum, omega_combine, t_exact_grid, EvalOptions};
use crate::mainterm::{g_char, g_selberg, main_term};
use crate::sieve::{self, m_from_histogram, SieveConfig};

pub const DEFAULT_CEILING: f64 = 10.0;
pub const MIN_GRID_POINTS: usize = 4;
pub const MAX_CHAR_CHECK_PRIME: u64 = 101;
/// Tolerance on `|z| = 1` for the squarefree `z^omega` experiment.
pub const UNIT_CIRCLE_TOL: f64 = 1e-12;
/// Relative tolerance of the Gauss-sum magnitude identity.
pub const GAUSS_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarnessOptions {
    pub sieve: SieveConfig,
    pub ceiling: f64,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        Self { sieve: SieveConfig::default(), ceiling: DEFAULT_CEILING }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvelopeKind {
    /// `T_{a,m}(N)` against `t N (log N)^{-alpha_t}`.
    DivisorSum,
    /// `T_{a,p}(N)` against `p N (log N)^{-(alpha_t + 1)}`.
    DivisorSumPrime,
    /// `M(x, q, r, t)`.
    SquarefreeOmega,
    /// `sum_{n <= x squarefree} z^omega(n)`.
    Selberg,
    /// `sum_{n <= x} chi(tau(n))`.
    Character,
}

/// Parameters of one report; only the fields relevant to its kind are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi2: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<Complex64>,
    /// Certified error of the predicted coefficient or constant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_tail: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub exact: Complex64,
    /// Main term divided by `N`.
    pub predicted: Complex64,
    /// `|exact - predicted * N|`
    pub residual: f64,
    pub envelope: f64,
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_envelope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_ratio: Option<f64>,
}

impl EnvelopeRow {
    pub fn new(n: u64, exact: Complex64, predicted: Complex64, envelope: f64) -> Self {
        let residual = (exact - predicted * n as f64).norm();
        Self {
            n,
            exact,
            predicted,
            residual,
            envelope,
            ratio: residual / envelope,
            alt_envelope: None,
            alt_ratio: None,
        }
    }

    fn with_alt(mut self, alt_envelope: f64) -> Self {
        self.alt_envelope = Some(alt_envelope);
        self.alt_ratio = Some(self.residual / alt_envelope);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub ceiling: f64,
    /// Largest ratio over the upper half of the grid.
    pub max_ratio: f64,
    pub max_ratio_all: f64,
    pub bounded: bool,
}

impl Verdict {
    pub fn from_rows(rows: &[EnvelopeRow], ceiling: f64) -> Self {
        let max = |rs: &[EnvelopeRow]| rs.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let max_ratio = max(&rows[rows.len() / 2..]);
        Self { ceiling, max_ratio, max_ratio_all: max(rows), bounded: max_ratio <= ceiling }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeReport {
    pub kind: EnvelopeKind,
    pub params: ReportParams,
    pub rows: Vec<EnvelopeRow>,
    pub verdict: Verdict,
}

impl EnvelopeReport {
    fn new(kind: EnvelopeKind, params: ReportParams, rows: Vec<EnvelopeRow>, ceiling: f64) -> Self {
        let verdict = Verdict::from_rows(&rows, ceiling);
        Self { kind, params, rows, verdict }
    }
}

/// Geometric grid `lo, lo f, lo f^2, ...` up to `hi`.
pub fn geometric_grid(lo: u64, hi: u64, factor: u64) -> Result<Vec<u64>> {
    if lo == 0 || factor < 2 || hi < lo {
        return Err(Error::Invalid(format!("bad grid {lo}:{hi}:{factor}")));
    }
    let mut out = vec![lo];
    while let Some(next) = out.last().unwrap().checked_mul(factor).filter(|&n| n <= hi) {
        out.push(next);
    }
    Ok(out)
}

fn check_grid(grid: &[u64]) -> Result<()> {
    if grid.len() < MIN_GRID_POINTS {
        return Err(Error::GridTooShort { need: MIN_GRID_POINTS, got: grid.len() });
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridNotAscending);
    }
    if grid[0] < 3 {
        return Err(Error::Invalid(format!("grid points must be >= 3, got {}", grid[0])));
    }
    Ok(())
}

fn ln(n: u64) -> f64 {
    (n as f64).ln()
}

/// `T_{a,m}(N)` against `coefficient * N` with envelope `t N (log N)^{-alpha_t}`.
pub fn run_envelope_t(a: i64, m: u64, grid: &[u64], cutoff: u64, opts: &HarnessOptions) -> Result<EnvelopeReport> {
    check_grid(grid)?;
    let ctx = ModulusContext::new(m)?;
    let est = main_term(a, &ctx, cutoff)?;
    let exact = t_exact_grid(a, m, grid, &EvalOptions { sieve: opts.sieve, override_gcd: false })?;
    let rows = exact
        .iter()
        .map(|s| {
            let env = ctx.t as f64 * s.n as f64 * ln(s.n).powf(-ctx.alpha_t);
            EnvelopeRow::new(s.n, s.value, est.coefficient, env)
        })
        .collect();
    let params = ReportParams {
        a: Some(a),
        m: Some(m),
        t: Some(ctx.t),
        alpha_t: Some(ctx.alpha_t),
        constant: Some(est.coefficient),
        constant_tail: Some(est.tail_bound),
        cutoff: Some(cutoff),
        ..Default::default()
    };
    Ok(EnvelopeReport::new(EnvelopeKind::DivisorSum, params, rows, opts.ceiling))
}

/// `T_{a,p}(N)` for an odd prime `p` with envelope `p N (log N)^{-(alpha_t + 1)}`.
///
/// Each row also carries the ratio against `p N (log N)^{-(alpha_p + 1)}`.
pub fn run_envelope_prime(a: i64, p: u64, grid: &[u64], cutoff: u64, opts: &HarnessOptions) -> Result<EnvelopeReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    check_grid(grid)?;
    let ctx = ModulusContext::new(p)?;
    let est = main_term(a, &ctx, cutoff)?;
    let exact = t_exact_grid(a, p, grid, &EvalOptions { sieve: opts.sieve, override_gcd: false })?;
    let alpha_p = alpha(p);
    let rows = exact
        .iter()
        .map(|s| {
            let base = p as f64 * s.n as f64;
            let l = ln(s.n);
            EnvelopeRow::new(s.n, s.value, est.coefficient, base * l.powf(-(ctx.alpha_t + 1.0)))
                .with_alt(base * l.powf(-(alpha_p + 1.0)))
        })
        .collect();
    let params = ReportParams {
        a: Some(a),
        p: Some(p),
        t: Some(ctx.t),
        alpha_t: Some(ctx.alpha_t),
        constant: Some(est.coefficient),
        constant_tail: Some(est.tail_bound),
        cutoff: Some(cutoff),
        ..Default::default()
    };
    Ok(EnvelopeReport::new(EnvelopeKind::DivisorSumPrime, params, rows, opts.ceiling))
}

/// `h(q) = prod_{p | q} p / (p + 1)`.
pub fn h_of(q: u64) -> Result<f64> {
    Ok(factorize(q)?.primes().map(|p| p as f64 / (p as f64 + 1.0)).product())
}

/// `M(x, q, r, t)` against `6 h(q) x / (pi^2 t)` with envelope
/// `x (log x)^{-alpha_t} log log max(q, 3) + sqrt(x) (e^4 log x)^{omega(q)}`.
pub fn run_mq_check(grid: &[u64], q: u64, r: i64, t: u64, opts: &HarnessOptions) -> Result<EnvelopeReport> {
    check_grid(grid)?;
    if t == 0 {
        return Err(Error::Zero);
    }
    if grid[0] < q {
        return Err(Error::BelowHypothesis { x: grid[0], q });
    }
    let f = factorize(q)?;
    let w = f.omega() as i32;
    let h = h_of(q)?;
    let coef = 6.0 * h / (std::f64::consts::PI.powi(2) * t as f64);
    let a_t = alpha(t);
    let lnln_q = (q.max(3) as f64).ln().ln();
    let hists = sieve::squarefree_omega_histogram(q, grid, &opts.sieve)?;
    let rows = grid
        .iter()
        .zip(&hists)
        .map(|(&x, hist)| {
            let xf = x as f64;
            let l = ln(x);
            let env = xf * l.powf(-a_t) * lnln_q + xf.sqrt() * (std::f64::consts::E.powi(4) * l).powi(w);
            let exact = m_from_histogram(hist, r, t) as f64;
            EnvelopeRow::new(x, Complex64::new(exact, 0.0), Complex64::new(coef, 0.0), env)
        })
        .collect();
    let params = ReportParams {
        q: Some(q),
        r: Some(r),
        t: Some(t),
        alpha_t: Some(a_t),
        constant: Some(Complex64::new(coef, 0.0)),
        ..Default::default()
    };
    Ok(EnvelopeReport::new(EnvelopeKind::SquarefreeOmega, params, rows, opts.ceiling))
}

/// `(log x)^w` on the principal branch, `log x > 0`.
fn log_power(x: u64, w: Complex64) -> Complex64 {
    (w * ln(x).ln()).exp()
}

/// `sum_{n <= x squarefree} z^omega(n)` against `G(z) x (log x)^{z - 1}`
/// with envelope `x (log x)^{Re z - 2}`; one report per `z`, one sieve pass.
pub fn run_selberg_check(
    zs: &[Complex64],
    grid: &[u64],
    p_max: u64,
    opts: &HarnessOptions,
) -> Result<Vec<EnvelopeReport>> {
    check_grid(grid)?;
    for z in zs {
        if (z.norm() - 1.0).abs() > UNIT_CIRCLE_TOL {
            return Err(Error::NotUnitCircle(z.norm()));
        }
    }
    let hists = sieve::squarefree_omega_histogram(1, grid, &opts.sieve)?;
    zs.iter()
        .map(|&z| {
            let g = g_selberg(z, p_max)?;
            let rows = grid
                .iter()
                .zip(&hists)
                .map(|(&x, hist)| {
                    let env = x as f64 * ln(x).powf(z.re - 2.0);
                    EnvelopeRow::new(x, omega_combine(z, hist), g.value * log_power(x, z - 1.0), env)
                })
                .collect();
            let params = ReportParams {
                z: Some(z),
                constant: Some(g.value),
                constant_tail: Some(g.tail_bound),
                cutoff: Some(p_max),
                ..Default::default()
            };
            Ok(EnvelopeReport::new(EnvelopeKind::Selberg, params, rows, opts.ceiling))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussCheck {
    pub character: u64,
    pub a: u64,
    pub value: Complex64,
    pub magnitude: f64,
    pub rel_error: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharCheck {
    pub p: u64,
    pub reports: Vec<EnvelopeReport>,
    pub gauss: Vec<GaussCheck>,
}

impl CharCheck {
    pub fn all_bounded(&self) -> bool {
        self.reports.iter().all(|r| r.verdict.bounded)
    }

    pub fn gauss_ok(&self) -> bool {
        self.gauss.iter().all(|g| g.ok)
    }
}

/// `|gauss_sum(chi_j, a)| = sqrt(p)` for every nonprincipal `chi_j` and `a in {1, 2, p-1}`.
pub fn gauss_magnitudes(p: u64) -> Result<Vec<GaussCheck>> {
    let table = crate::arith::characters(p)?;
    let sqrt_p = (p as f64).sqrt();
    let mut a_values = vec![1, 2, p - 1];
    a_values.dedup();
    let mut out = Vec::new();
    for j in 1..table.order() {
        for &a in &a_values {
            let value = gauss_sum(&table, j, a as i64)?;
            let rel_error = (value.norm() - sqrt_p).abs() / sqrt_p;
            out.push(GaussCheck {
                character: j,
                a,
                value,
                magnitude: value.norm(),
                rel_error,
                ok: rel_error <= GAUSS_REL_TOL,
            });
        }
    }
    Ok(out)
}

/// `sum_{n <= x} chi(tau(n))` against `G(chi) x (log x)^{chi(2) - 1}` with
/// envelope `x (log x)^{Re chi(2) - 2}`, for every character modulo `p`.
pub fn run_char_check(p: u64, grid: &[u64], p_max: u64, opts: &HarnessOptions) -> Result<CharCheck> {
    if p > MAX_CHAR_CHECK_PRIME {
        return Err(Error::Invalid(format!("character check supports p <= {MAX_CHAR_CHECK_PRIME}, got {p}")));
    }
    check_grid(grid)?;
    let table = crate::arith::characters(p)?;
    let hists = sieve::tau_histogram(p, grid, &opts.sieve)?;
    let mut reports = Vec::new();
    for j in 0..table.order() {
        let chi2 = table.value(j, 2);
        let g = g_char(&table, j, p_max)?;
        let rows = grid
            .iter()
            .zip(&hists)
            .map(|(&x, hist)| {
                let env = x as f64 * ln(x).powf(chi2.re - 2.0);
                EnvelopeRow::new(x, char_combine(&table, j, hist), g.value * log_power(x, chi2 - 1.0), env)
            })
            .collect();
        let params = ReportParams {
            p: Some(p),
            character: Some(j),
            chi2: Some(chi2),
            constant: Some(g.value),
            constant_tail: Some(g.tail_bound),
            cutoff: Some(p_max),
            ..Default::default()
        };
        reports.push(EnvelopeReport::new(EnvelopeKind::Character, params, rows, opts.ceiling));
    }
    Ok(CharCheck { p, reports, gauss: gauss_magnitudes(p)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> Vec<u64> {
        geometric_grid(1_000, 1_000_000, 10).unwrap()
    }

    #[test]
    fn grid_rules() {
        assert_eq!(geometric_grid(10, 10_000, 10).unwrap(), vec![10, 100, 1000, 10_000]);
        let o = HarnessOptions::default();
        assert_eq!(
            run_envelope_t(1, 3, &[10, 100, 1000], 1000, &o).unwrap_err(),
            Error::GridTooShort { need: 4, got: 3 }
        );
        assert_eq!(run_envelope_t(1, 3, &[10, 100, 100, 1000], 1000, &o).unwrap_err(), Error::GridNotAscending);
        assert_eq!(run_envelope_prime(1, 9, &small_grid(), 1000, &o).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(
            run_mq_check(&small_grid(), 5000, 0, 2, &o).unwrap_err(),
            Error::BelowHypothesis { x: 1000, q: 5000 }
        );
        assert_eq!(
            run_selberg_check(&[Complex64::new(0.5, 0.0)], &small_grid(), 1000, &o).unwrap_err(),
            Error::NotUnitCircle(0.5)
        );
    }

    #[test]
    fn rows_are_self_consistent() {
        let o = HarnessOptions::default();
        let rep = run_envelope_t(1, 3, &small_grid(), 100_000, &o).unwrap();
        for row in &rep.rows {
            assert_eq!(row.residual, (row.exact - row.predicted * row.n as f64).norm());
            assert!(row.envelope > 0.0);
            assert_eq!(row.predicted, rep.rows[0].predicted);
        }
    }

    #[test]
    fn prime_envelope_for_five() {
        let o = HarnessOptions::default();
        let rep = run_envelope_prime(1, 5, &small_grid(), 100_000, &o).unwrap();
        assert_eq!(rep.params.t, Some(4));
        let row = &rep.rows[0];
        assert!((row.envelope - 5.0 * 1000.0 / 1000f64.ln().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn mq_uses_h() {
        // (1 + 1/2)^{-1} (1 + 1/3)^{-1}
        assert!((h_of(6).unwrap() - 0.5).abs() < 1e-15);
        let o = HarnessOptions::default();
        let rep = run_mq_check(&small_grid(), 6, 0, 2, &o).unwrap();
        assert!((rep.rows[0].predicted.re - 3.0 * 0.5 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn principal_character_rows() {
        let o = HarnessOptions::default();
        let c = run_char_check(3, &small_grid(), 10_000, &o).unwrap();
        assert_eq!(c.reports.len(), 2);
        let c0 = sieve::count_c(3, 0, 1_000).unwrap();
        assert_eq!(c.reports[0].rows[0].exact, Complex64::new((1000 - c0) as f64, 0.0));
        assert!(c.gauss_ok());
    }
}
