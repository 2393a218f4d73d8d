//! The constants `C₁ … C₄` of the universal truncation bound.
//!
//! `C₁` and `C₃` are ratios of powers like `(2N+1)^{2N+1}` that overflow an
//! `f64` long before `N = 100`. They are evaluated as compensated sums of
//! logarithms, with each `a^a / b^b` pair rewritten through `ln_1p` so that
//! the cancelling leading terms never appear.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::sinc;
use crate::numeric::compensated_sum;

/// `A ln A - (A - m) ln(A - m)` without cancellation.
fn self_power_gap(a: f64, m: f64) -> f64 {
    -a * (-m / a).ln_1p() + m * (a - m).ln()
}

fn check_p(constant: &'static str, p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::domain(constant, format!("p = {p} must be finite and > 1")))
    }
}

fn check_m(constant: &'static str, m: f64, upper: f64) -> Result<()> {
    if m.is_finite() && (0.0..upper).contains(&m) {
        Ok(())
    } else {
        Err(Error::domain(
            constant,
            format!("M = {m} must lie in [0, {upper})"),
        ))
    }
}

/// `ln C₁(N, M)`.
pub fn ln_c1(n: u32, m: f64, p: f64) -> Result<f64> {
    check_p("C1", p)?;
    check_m("C1", m, 1.0)?;
    let nf = f64::from(n);
    if !(nf - m - 0.5 > 0.0) {
        return Err(Error::domain(
            "C1",
            format!("N - M - 1/2 = {} must be > 0", nf - m - 0.5),
        ));
    }
    let a = 2.0 * nf + 1.0;
    let base = compensated_sum([
        2.0 * m * LN_2,
        (m + 0.5).ln(),
        (1.0 - 2.0 * m) * (2.0 * m).ln_1p(),
        -m * (-m).ln_1p(),
        self_power_gap(a, m),
        -(-m / (nf - 0.5)).ln_1p(),
        2.0 * nf * (m / nf).ln_1p() + 2.0 * m * (nf + m).ln(),
        -nf.ln(),
    ]);
    Ok(compensated_sum([
        LN_2,
        p * base,
        (nf / (p - 1.0)).ln_1p(),
    ]))
}

pub fn c1(n: u32, m: f64, p: f64) -> Result<f64> {
    ln_c1(n, m, p).map(f64::exp)
}

/// `ln C₃(N, M)`.
pub fn ln_c3(n: u32, m: f64) -> Result<f64> {
    check_m("C3", m, 0.5)?;
    let nf = f64::from(n);
    let a = nf - 1.0 - 2.0 * m;
    if !(a > 0.0) {
        return Err(Error::domain(
            "C3",
            format!("N - 1 - 2M = {a} must be > 0"),
        ));
    }
    Ok(compensated_sum([
        2.0 * m * LN_2,
        2.0 * m * (-m).ln_1p(),
        -sinc(m).ln(),
        (1.0 - 2.0 * m) * (2.0 * m).ln_1p(),
        -4.0 * m * (-2.0 * m).ln_1p(),
        2.0 * a * (m / a).ln_1p() + 2.0 * m * (a + m).ln(),
        2.0 * nf * (m / nf).ln_1p() + 2.0 * m * (nf + m).ln(),
    ]))
}

pub fn c3(n: u32, m: f64) -> Result<f64> {
    ln_c3(n, m).map(f64::exp)
}

/// `ln C₂(N, M, δ) = ln C₃ + ln(M + 1/2) + ln(1 + M/δ)`.
pub fn ln_c2(n: u32, m: f64, delta: f64) -> Result<f64> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::domain("C2", format!("δ = {delta} must be > 0")));
    }
    let l3 = ln_c3(n, m)?;
    Ok(compensated_sum([l3, (m + 0.5).ln(), (m / delta).ln_1p()]))
}

pub fn c2(n: u32, m: f64, delta: f64) -> Result<f64> {
    ln_c2(n, m, delta).map(f64::exp)
}

pub fn c4(n: u32, p: f64) -> Result<f64> {
    check_p("C4", p)?;
    if n < 2 {
        return Err(Error::domain("C4", format!("N = {n} must be >= 2")));
    }
    let nf = f64::from(n);
    let e = 1.0 - p;
    let head = (p - 1.0).exp2() * (2.0 * p - 1.0) + p;
    Ok(compensated_sum([head, -(nf - 0.5).powf(e), -(nf - 1.0).powf(e)]) / (p - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundConstant {
    C1,
    C2,
    C3,
    C4,
}

/// Growth exponent `a` in `C(N) ~ const · N^a` as `N → ∞`.
pub fn asymptotic_exponent(constant: BoundConstant, m: f64, p: f64) -> f64 {
    match constant {
        BoundConstant::C1 => 1.0 + 3.0 * m * p - p,
        BoundConstant::C2 | BoundConstant::C3 => 4.0 * m,
        BoundConstant::C4 => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    // Straight powf evaluation of the closed forms; fine for small N.
    fn c1_direct(n: f64, m: f64, p: f64) -> f64 {
        let s = 2f64.powf(2.0 * m) * (m + 0.5) * (1.0 + 2.0 * m).powf(1.0 - 2.0 * m)
            / ((1.0 - m).powf(m) * (2.0 * n + 1.0 - m).powf(2.0 * n + 1.0 - m))
            * (n - 0.5)
            * (2.0 * n + 1.0).powf(2.0 * n + 1.0)
            * (n + m).powf(2.0 * (n + m))
            / ((n - m - 0.5) * n.powf(2.0 * n + 1.0));
        2.0 * s.powf(p) * (1.0 + n / (p - 1.0))
    }

    fn c3_direct(n: f64, m: f64) -> f64 {
        let sm = if m == 0.0 { 1.0 } else { (PI * m).sin() / (PI * m) };
        2f64.powf(2.0 * m) * (1.0 - m).powf(2.0 * m)
            / (sm * (1.0 + 2.0 * m).powf(2.0 * m - 1.0) * (1.0 - 2.0 * m).powf(4.0 * m))
            * (n - 1.0 - m).powf(2.0 * (n - 1.0 - m))
            * (n + m).powf(2.0 * (n + m))
            / ((n - 1.0 - 2.0 * m).powf(2.0 * (n - 1.0 - 2.0 * m)) * n.powf(2.0 * n))
    }

    #[test]
    fn c1_at_zero_jitter() {
        assert!(rel(c1(2, 0.0, 2.0).unwrap(), 0.375) < 1e-15);
        for n in 2..=64u32 {
            for p in [1.5, 2.0, 3.0] {
                let nf = f64::from(n);
                let want = 2.0 * (2.0 * nf).powf(-p) * (1.0 + nf / (p - 1.0));
                assert!(rel(c1(n, 0.0, p).unwrap(), want) < 1e-13);
            }
        }
    }

    #[test]
    fn c1_matches_direct_with_jitter() {
        for (n, m, p) in [(2, 0.1, 2.0), (3, 0.2, 1.5), (10, 0.05, 3.0), (20, 0.24, 2.0)] {
            let want = c1_direct(f64::from(n), m, p);
            assert!(rel(c1(n, m, p).unwrap(), want) < 1e-11, "{n} {m} {p}");
        }
    }

    #[test]
    fn c3_values() {
        for n in 2..=64 {
            assert_eq!(c3(n, 0.0).unwrap(), 1.0);
            assert_eq!(c2(n, 0.0, 0.7).unwrap(), 0.5);
        }
        for (n, m) in [(3, 0.1), (5, 0.2), (12, 0.05), (30, 0.45)] {
            let want = c3_direct(f64::from(n), m);
            assert!(rel(c3(n, m).unwrap(), want) < 1e-11, "{n} {m}");
        }
        let want = c3_direct(3.0, 0.1) * 0.6 * 1.125;
        assert!(rel(c2(3, 0.1, 0.8).unwrap(), want) < 1e-11);
    }

    #[test]
    fn c4_values() {
        assert!(rel(c4(2, 2.0).unwrap(), 19.0 / 3.0) < 1e-15);
        assert!((c4(1 << 30, 2.0).unwrap() - 8.0).abs() < 1e-8);
    }

    #[test]
    fn domain_errors_name_the_constant() {
        match c3(1, 0.0) {
            Err(Error::Domain { constant, .. }) => assert_eq!(constant, "C3"),
            other => panic!("{other:?}"),
        }
        match c2(2, 0.6, 1.0) {
            Err(Error::Domain { constant, .. }) => assert_eq!(constant, "C3"),
            other => panic!("{other:?}"),
        }
        match c2(4, 0.1, 0.0) {
            Err(Error::Domain { constant, .. }) => assert_eq!(constant, "C2"),
            other => panic!("{other:?}"),
        }
        assert!(c1(1, 0.6, 2.0).is_err());
        assert!(c1(4, 0.0, 1.0).is_err());
        assert!(c4(1, 2.0).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(asymptotic_exponent(BoundConstant::C1, 0.0, 2.0), -1.0);
        assert_eq!(asymptotic_exponent(BoundConstant::C4, 0.3, 2.0), 0.0);
        assert!((asymptotic_exponent(BoundConstant::C3, 0.1, 2.0) - 0.4).abs() < 1e-15);
    }
}
