use super::factor::{factorize, gcd, pow_mod};
use crate::error::{Error, Result};

/// Carmichael's function: the exponent of the unit group mod `m`.
pub fn carmichael(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Zero);
    }
    let f = factorize(m)?;
    let mut lambda = 1u64;
    for &(p, e) in f.factors() {
        let part = if p == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1u64 << (e - 2),
            }
        } else {
            (p - 1) * p.pow(e - 1)
        };
        lambda = lcm(lambda, part).ok_or(Error::Overflow("carmichael"))?;
    }
    Ok(lambda)
}

fn lcm(a: u64, b: u64) -> Option<u64> {
    (a / gcd(a, b)).checked_mul(b)
}

/// Least `t >= 1` with `b^t = 1 (mod m)`.
///
/// Starts from `lambda(m)` and strips prime factors of it while the power
/// stays 1, so the cost is polylogarithmic in `m`.
pub fn multiplicative_order(b: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Invalid(format!("modulus must be >= 2, got {m}")));
    }
    if gcd(b % m, m) != 1 {
        return Err(Error::NotCoprime { b, m });
    }
    let lambda = carmichael(m)?;
    let mut t = lambda;
    for &(p, _) in factorize(lambda)?.factors() {
        while t % p == 0 && pow_mod(b, t / p, m) == 1 {
            t /= p;
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_by_scan(b: u64, m: u64) -> u64 {
        let mut x = b % m;
        let mut t = 1;
        while x != 1 % m {
            x = x * b % m;
            t += 1;
        }
        t
    }

    #[test]
    fn examples() {
        assert_eq!(multiplicative_order(2, 7), Ok(3));
        assert_eq!(multiplicative_order(2, 9), Ok(6));
        assert_eq!(multiplicative_order(5, 2), Ok(1));
        assert_eq!(multiplicative_order(2, 101), Ok(100));
        assert_eq!(multiplicative_order(6, 9), Err(Error::NotCoprime { b: 6, m: 9 }));
    }

    #[test]
    fn carmichael_values() {
        let known = [(1, 1), (2, 1), (8, 2), (16, 4), (15, 4), (21, 6), (561, 80), (1000, 100)];
        for (m, l) in known {
            assert_eq!(carmichael(m), Ok(l), "lambda({m})");
        }
    }

    #[test]
    fn agrees_with_linear_scan() {
        for m in 2..400u64 {
            for b in 1..m {
                if gcd(b, m) == 1 {
                    assert_eq!(multiplicative_order(b, m).unwrap(), order_by_scan(b, m), "b={b} m={m}");
                }
            }
        }
    }
}
