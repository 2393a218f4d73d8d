//! Principal branch of the Lambert W function on the real line, and the
//! separation `δ*` minimising the Plancherel–Pólya factor.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 50;
const TOLERANCE: f64 = 1e-12;

/// `W_0(y)`, the solution `w >= -1` of `w e^w = y`, for `y >= -1/e`.
///
/// Halley iteration from a branch-point series near `-1/e`, `ln(1 + y)` on
/// the middle range and `ln y - ln ln y` for large `y`.
pub fn lambert_w0_real(y: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if y.is_nan() || y < branch {
        return Err(Error::domain(
            "lambert_w0",
            format!("argument {y} is below -1/e"),
        ));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    // e·y + 1 can round to a tiny negative number right at the branch point.
    let p2 = 2.0 * (E * y + 1.0);
    if p2 <= 0.0 {
        return Ok(-1.0);
    }

    let mut w = if p2 < 0.5 {
        let p = p2.sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if y < 3.0 {
        (1.0 + y).ln() * (1.0 - 0.5 * (1.0 + y).ln() / (2.0 + (1.0 + y).ln()))
    } else {
        let l1 = y.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - y;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= TOLERANCE * 1e-3 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// `z* = W_0(-2/e²) + 2`, the nonzero root of `(2 - z)e^z = 2`.
pub fn z_star() -> f64 {
    lambert_w0_real(-2.0 / (E * E)).expect("-2/e^2 lies above the branch point") + 2.0
}

/// `δ* = 2 z* / (qπ)`: `(e^{qπδ/2} - 1)/δ²` decreases on `(0, δ*)` and
/// increases afterwards.
pub fn delta_star(q: f64) -> Result<f64> {
    if !(q >= 1.0) {
        return Err(Error::domain("delta_star", format!("q = {q} must be >= 1")));
    }
    Ok(2.0 * z_star() / (q * PI))
}

/// `(e^{qπδ/2} - 1)/δ²`, the separation-dependent part of the
/// Plancherel–Pólya constant at `σ = π`.
pub fn pp_profile(q: f64, delta: f64) -> f64 {
    (q * PI * delta / 2.0).exp_m1() / (delta * delta)
}
