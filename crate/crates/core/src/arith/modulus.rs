use super::decompose::check_odd_modulus;
use super::factor::{factorize, mul_mod};
use super::order::multiplicative_order;
use crate::error::Result;

/// `1 - cos(2 pi / t)`, the logarithmic saving exponent attached to an order `t`.
///
/// Exact for `t` in {1, 2, 3, 4, 6}, the only orders with a rational cosine.
pub fn alpha(t: u64) -> f64 {
    match t {
        1 => 0.0,
        2 => 2.0,
        3 => 1.5,
        4 => 1.0,
        6 => 0.5,
        _ => 1.0 - (std::f64::consts::TAU / t as f64).cos(),
    }
}

/// Precomputed data for an odd modulus `m`: the order `t` of 2, `alpha_t`,
/// the divisors of `m`, and the residues `2^1, ..., 2^t mod m`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ModulusContext {
    pub m: u64,
    pub t: u64,
    pub alpha_t: f64,
    pub divisors: Vec<u64>,
    pub pow2_residues: Vec<u64>,
}

impl ModulusContext {
    pub fn new(m: u64) -> Result<Self> {
        check_odd_modulus(m)?;
        let t = multiplicative_order(2, m)?;
        let mut pow2_residues = Vec::with_capacity(t as usize);
        let mut x = 1u64;
        for _ in 0..t {
            x = mul_mod(x, 2, m);
            pow2_residues.push(x);
        }
        Ok(Self { m, t, alpha_t: alpha(t), divisors: divisors(m)?, pow2_residues })
    }
}

/// Sorted divisors of `n`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for &(p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
