use num_complex::Complex64;

/// `e(k/m) = exp(2 pi i k / m)` for `0 <= k < m`.
///
/// Built so that `e(-k/m)` is bit-for-bit the conjugate of `e(k/m)`, roots at
/// multiples of 30 and 45 degrees are the correctly rounded exact values, and
/// every other angle is folded into the first octant before `sin_cos`.
fn unit_root(k: u64, m: u64) -> Complex64 {
    debug_assert!(k < m);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k > m {
        return unit_root(m - k, m).conj();
    }
    let (k, m) = (u128::from(k), u128::from(m));
    let h = 3f64.sqrt() / 2.0;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    if 12 * k % m == 0 {
        let (c, s) = [(h, 0.5), (0.5, h), (0.0, 1.0), (-0.5, h), (-h, 0.5), (-1.0, 0.0)][(12 * k / m) as usize - 1];
        return Complex64::new(c, s);
    }
    if 8 * k % m == 0 {
        return if 8 * k == m { Complex64::new(r, r) } else { Complex64::new(-r, r) };
    }
    let turn = |num: u128, den: u128| (std::f64::consts::TAU * num as f64 / den as f64).sin_cos();
    if 8 * k < m {
        let (s, c) = turn(k, m);
        Complex64::new(c, s)
    } else if 4 * k < m {
        let (s, c) = turn(m - 4 * k, 4 * m);
        Complex64::new(s, c)
    } else if 8 * k < 3 * m {
        let (s, c) = turn(4 * k - m, 4 * m);
        Complex64::new(-s, c)
    } else {
        let (s, c) = turn(m - 2 * k, 2 * m);
        Complex64::new(-c, s)
    }
}

/// `e_m(z) = exp(2 pi i z / m)` for any integer `z`.
pub fn root_of_unity(z: i64, m: u64) -> Complex64 {
    assert!(m >= 1, "modulus must be positive");
    unit_root(reduce(z, m), m)
}

#[inline]
pub(crate) fn reduce(z: i64, m: u64) -> u64 {
    i128::from(z).rem_euclid(i128::from(m)) as u64
}

/// All `m`-th roots of unity, one `sin_cos` per residue.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTable {
    m: u64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        Self { m, roots: (0..m).map(|k| unit_root(k, m)).collect() }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// `e(k/m)` for a nonnegative exponent.
    #[inline]
    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[(k % self.m) as usize]
    }

    /// `e_m(z)` for any integer `z`.
    #[inline]
    pub fn at(&self, z: i64) -> Complex64 {
        self.roots[reduce(z, self.m) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(root_of_unity(0, 7), Complex64::new(1.0, 0.0));
        assert_eq!(root_of_unity(3, 6), Complex64::new(-1.0, 0.0));
        let w = root_of_unity(1, 3);
        assert!((w - Complex64::new(-0.5, 0.8660254037844386)).norm() < 1e-15);
        assert_eq!(root_of_unity(-1, 3), w.conj());
        assert_eq!(root_of_unity(7, 3), w);
    }

    #[test]
    fn table_matches_function_and_conjugates() {
        for m in 1..60u64 {
            let t = RootTable::new(m);
            for z in -130i64..130 {
                assert_eq!(t.at(z), root_of_unity(z, m));
                assert_eq!(t.at(-z), t.at(z).conj());
            }
        }
    }

    #[test]
    fn accurate_against_direct_angle() {
        assert_eq!(root_of_unity(1, 3), Complex64::new(-0.5, 3f64.sqrt() / 2.0));
        assert_eq!(root_of_unity(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(3, 8).re, -std::f64::consts::FRAC_1_SQRT_2);
        let pinned = [
            (11, 13, 0.5680647467311558, -0.8229838658936564),
            (5, 7, -0.2225209339563144, -0.9749279121818236),
            (100, 399, -0.003936822729975192, 0.9999922506833704),
            (1, 5, 0.30901699437494745, 0.9510565162951535),
        ];
        for (k, m, c, s) in pinned {
            let w = root_of_unity(k, m);
            assert!((w.re - c).abs() <= f64::EPSILON * c.abs().max(0.5), "{k}/{m}");
            assert!((w.im - s).abs() <= f64::EPSILON * s.abs().max(0.5), "{k}/{m}");
        }
        for m in 1..400u64 {
            for k in 0..m {
                let x = std::f64::consts::TAU * k as f64 / m as f64;
                let w = root_of_unity(k as i64, m);
                // the unfolded angle itself carries up to ~7e-16 of rounding
                assert!((w - Complex64::new(x.cos(), x.sin())).norm() < 2e-15, "{k}/{m}");
                assert!((w.norm() - 1.0).abs() < 3e-16);
            }
        }
    }
}
