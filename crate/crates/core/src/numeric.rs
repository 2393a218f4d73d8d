//! Small numerical building blocks shared by the kernel, the constants and
//! the reconstruction sums.

use std::ops::AddAssign;

/// Kahan–Babuška–Neumaier summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<NeumaierSum>().value()
}

/// Product accumulated as a sign and a compensated sum of `ln|factor|`.
///
/// A zero factor makes the product absorbing-zero; later factors are ignored.
#[derive(Clone, Copy, Debug)]
pub struct LogProduct {
    sign: i8,
    log_abs: NeumaierSum,
}

impl Default for LogProduct {
    fn default() -> Self {
        Self::one()
    }
}

impl LogProduct {
    pub fn one() -> Self {
        Self {
            sign: 1,
            log_abs: NeumaierSum::new(),
        }
    }

    pub fn zero() -> Self {
        Self {
            sign: 0,
            log_abs: NeumaierSum::new(),
        }
    }

    pub fn mul(&mut self, factor: f64) {
        if self.sign == 0 {
            return;
        }
        if factor == 0.0 {
            self.sign = 0;
            return;
        }
        if factor < 0.0 {
            self.sign = -self.sign;
        }
        self.log_abs.add(factor.abs().ln());
    }

    /// Multiply by `num / den` without forming the quotient when both are
    /// large or small.
    pub fn mul_ratio(&mut self, num: f64, den: f64) {
        self.mul(num);
        if self.sign != 0 {
            if den < 0.0 {
                self.sign = -self.sign;
            }
            self.log_abs.add(-den.abs().ln());
        }
    }

    pub fn mul_sign(&mut self, negative: bool) {
        if negative {
            self.sign = -self.sign;
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.log_abs.value()
        }
    }

    pub fn value(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_abs.value().exp()
        }
    }
}

/// `(-1)^n` as a boolean "is negative".
#[inline]
pub(crate) fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = compensated_sum(x.iter().copied()) / n;
    let my = compensated_sum(y.iter().copied()) / n;
    let sxy = compensated_sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = compensated_sum(x.iter().map(|a| (a - mx) * (a - mx)));
    sxy / sxx
}
