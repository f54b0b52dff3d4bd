use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex values, run independently on
/// the real and imaginary parts.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

#[inline]
fn step((sum, comp): (f64, f64), x: f64) -> (f64, f64) {
    let t = sum + x;
    let lost = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    (t, comp + lost)
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re = step(self.re, z.re);
        self.im = step(self.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

impl std::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::new();
        iter.into_iter().for_each(|z| acc.add(z));
        acc
    }
}

/// Compensated sum of an iterator of complex numbers.
pub fn compensated_sum<I: IntoIterator<Item = Complex64>>(iter: I) -> Complex64 {
    iter.into_iter().collect::<CompensatedSum>().total()
}

/// Compensated sum of reals.
pub fn compensated_sum_real<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    compensated_sum(iter.into_iter().map(|x| Complex64::new(x, 0.0))).re
}
