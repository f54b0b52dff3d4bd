//! Upper-bound envelopes for `max_a |T_{a,p}(N)| / N` and `max_a |T_{a,m}(N)| / N`.

use serde::Serialize;

use crate::arith::{alpha, is_prime};
use crate::error::{Error, Result};

/// The four `t`-ranges of the prime-modulus saving `A(t)`.
///
/// 1. `t <= p^{1/2}`: `p^{1/8} t^{-7/18} (log p)^{7/6}`
/// 2. `p^{1/2} < t <= p^{3/5} (log p)^{-6/5}`: `p^{1/4} t^{-23/36} (log p)^{7/6}`
/// 3. `p^{3/5} < t <= p^{2/3} (log p)^{-2/3}`: `p^{1/6} t^{-1/2} (log p)^{4/3}`
/// 4. `t > p^{2/3} (log p)^{-2/3}`: `p^{1/2} t^{-1} log p`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ABound {
    pub p: u64,
    pub t: u64,
    /// Which of the four range conditions hold (they may overlap for small `p`,
    /// and leave a gap between ranges 2 and 3).
    pub conditions: [bool; 4],
    /// Selected branch, 1-based; `None` when no range condition holds.
    pub branch: Option<u8>,
    /// Smallest formula value among the branches whose condition holds, or the
    /// trivial bound 1 (from `|S_p| <= t`) when none does.
    pub value: f64,
    /// Formula value of every branch, regardless of its condition.
    pub branch_values: [f64; 4],
}

/// Range conditions for branches 1..=4.
pub fn a_bound_conditions(p: u64, t: u64) -> [bool; 4] {
    let (pf, tf) = (p as f64, t as f64);
    let lp = pf.ln();
    [
        tf <= pf.sqrt(),
        pf.sqrt() < tf && tf <= pf.powf(0.6) * lp.powf(-1.2),
        pf.powf(0.6) < tf && tf <= pf.powf(2.0 / 3.0) * lp.powf(-2.0 / 3.0),
        tf > pf.powf(2.0 / 3.0) * lp.powf(-2.0 / 3.0),
    ]
}

pub fn a_bound_values(p: u64, t: u64) -> [f64; 4] {
    let (pf, tf) = (p as f64, t as f64);
    let lp = pf.ln();
    [
        pf.powf(1.0 / 8.0) * tf.powf(-7.0 / 18.0) * lp.powf(7.0 / 6.0),
        pf.powf(0.25) * tf.powf(-23.0 / 36.0) * lp.powf(7.0 / 6.0),
        pf.powf(1.0 / 6.0) * tf.powf(-0.5) * lp.powf(4.0 / 3.0),
        pf.sqrt() / tf * lp,
    ]
}

/// Evaluates `A(t)` for an odd prime `p` and `t >= 1`.
pub fn a_bound(p: u64, t: u64) -> Result<ABound> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if t == 0 {
        return Err(Error::Zero);
    }
    let conditions = a_bound_conditions(p, t);
    let branch_values = a_bound_values(p, t);
    let best = (0..4).filter(|&i| conditions[i]).min_by(|&a, &b| branch_values[a].total_cmp(&branch_values[b]));
    Ok(ABound {
        p,
        t,
        conditions,
        branch: best.map(|i| i as u8 + 1),
        value: best.map_or(1.0, |i| branch_values[i]),
        branch_values,
    })
}

/// Shape of the general-modulus bound `(m^{-delta} + t (log N)^{-alpha_t}) N`.
///
/// `delta` has no explicit value; it is a free exploration parameter and the
/// result is not a certified bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupEnvelope {
    pub m: u64,
    pub t: u64,
    pub delta: f64,
    pub epsilon: f64,
    /// Whether `t > m^epsilon`, the hypothesis under which the shape applies.
    pub hypothesis_holds: bool,
    pub n: u64,
    pub envelope: f64,
    pub certified: bool,
}

pub fn subgroup_envelope(m: u64, t: u64, n: u64, delta: f64, epsilon: f64) -> Result<SubgroupEnvelope> {
    if n < 3 {
        return Err(Error::Invalid(format!("N must be >= 3, got {n}")));
    }
    let nf = n as f64;
    let envelope = ((m as f64).powf(-delta) + t as f64 * nf.ln().powf(-alpha(t))) * nf;
    Ok(SubgroupEnvelope {
        m,
        t,
        delta,
        epsilon,
        hypothesis_holds: (t as f64) > (m as f64).powf(epsilon),
        n,
        envelope,
        certified: false,
    })
}
