//! The window canonical product sampling kernel `ψ_N(n, x)`.
//!
//! Replacing the integer zeros of `sin(πt)` inside the window by the jittered
//! nodes gives the entire function
//!
//! ```text
//! G(t) = sin(πt) · ∏_{j ∈ W} (t - t_j) / (t - j)
//! ```
//!
//! whose Lagrange kernel at node `t_n` (with `t_n = n` off the window) is
//!
//! ```text
//! ψ(n, x) = (-1)^n / sinc(h_n) · sin(πx) / (π(x - n))
//!           · ∏_{j ∈ W, j ≠ n} (x - t_j)(t_n - j) / ((x - j)(t_n - t_j)).
//! ```
//!
//! For `n` in the window this is the closed form with the
//! `(n - t_n)/sin(πt_n)` prefactor; off the window `h_n = 0` and it reduces to
//! `sinc(x - n) ∏_{j ∈ W} …`. The only pole of the product that can approach
//! `x` is the one at the nearest integer `j_x`; it is cancelled against
//! `sin(πx) = (-1)^{j_x} sin(π(x - j_x))` before anything is divided.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{odd, LogProduct};
use crate::sampling_set::{nearest_index, AxisNodes, NodeSet};

/// `x` is treated as sitting on node `t` when `|x - t| < NODE_TOL·(1 + |x|)`.
pub const NODE_TOL: f64 = 1e-9;

/// Product factors smaller than this in magnitude are taken as exact zeros.
pub const ZERO_FACTOR: f64 = 1e-14;

/// A kernel value together with its sign and `ln|value|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelEval {
    pub value: f64,
    pub log_abs: f64,
    pub sign: i8,
}

impl KernelEval {
    pub fn zero() -> Self {
        Self {
            value: 0.0,
            log_abs: f64::NEG_INFINITY,
            sign: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            value: 1.0,
            log_abs: 0.0,
            sign: 1,
        }
    }

    fn from_product(p: &LogProduct) -> Self {
        if p.sign() == 0 {
            return Self::zero();
        }
        let log_abs = p.log_abs();
        Self {
            value: f64::from(p.sign()) * log_abs.exp(),
            log_abs,
            sign: p.sign(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

/// `sin(πt)` with exact range reduction to `[-1/2, 1/2]`.
pub fn sin_pi(t: f64) -> f64 {
    let m = t.round();
    let r = t - m;
    let s = (PI * r).sin();
    if odd(m as i64) {
        -s
    } else {
        s
    }
}

/// Normalized sinc, `sin(πt)/(πt)` with `sinc(0) = 1`.
pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    if t.abs() < 1e-5 {
        let u = PI * t;
        let u2 = u * u;
        return 1.0 - u2 / 6.0 * (1.0 - u2 / 20.0);
    }
    sin_pi(t) / (PI * t)
}

fn near(x: f64, t: f64) -> bool {
    (x - t).abs() < NODE_TOL * (1.0 + x.abs())
}

/// `ψ(n, x)` for any `n`.
pub fn kernel(n: i64, x: f64, axis: &AxisNodes) -> Result<KernelEval> {
    if !x.is_finite() {
        return Err(Error::domain("kernel", format!("x = {x} is not finite")));
    }
    let t_n = axis.node(n);
    let h_n = axis.offset(n);

    // Interpolation at the nodes themselves. Only nodes adjacent to the
    // nearest integer can lie within the tolerance.
    let a = nearest_index(x);
    if near(x, t_n) {
        return Ok(KernelEval::one());
    }
    for m in [a - 1, a, a + 1] {
        if m != n && near(x, axis.node(m)) {
            return Ok(KernelEval::zero());
        }
    }

    let mut p = LogProduct::one();
    p.mul_sign(odd(n));
    p.mul_ratio(1.0, sinc(h_n));

    let s = x - a as f64;
    let absorbed = if a == n {
        // sin(πx)/(π(x - n)) = (-1)^n sinc(x - n)
        p.mul_sign(odd(n));
        p.mul(sinc(s));
        None
    } else if axis.contains(a) {
        // sin(πx)/(π(x - a)) · (x - t_a)/(x - n) · (t_n - a)/(t_n - t_a)
        let t_a = axis.node(a);
        check_distinct(n, a, t_n, t_a)?;
        p.mul_sign(odd(a));
        p.mul(sinc(s));
        p.mul(factor((x - t_a) / (x - n as f64)));
        p.mul((t_n - a as f64) / (t_n - t_a));
        Some(a)
    } else {
        p.mul_sign(odd(a));
        p.mul_ratio(sin_pi(s), PI * (x - n as f64));
        None
    };

    for j in axis.indices() {
        if j == n || Some(j) == absorbed {
            continue;
        }
        let t_j = axis.node(j);
        check_distinct(n, j, t_n, t_j)?;
        let f = ((x - t_j) / (x - j as f64)) * ((t_n - j as f64) / (t_n - t_j));
        p.mul(factor(f));
        if p.sign() == 0 {
            break;
        }
    }
    Ok(KernelEval::from_product(&p))
}

fn factor(f: f64) -> f64 {
    if f.abs() < ZERO_FACTOR {
        0.0
    } else {
        f
    }
}

fn check_distinct(n: i64, m: i64, t_n: f64, t_m: f64) -> Result<()> {
    if t_n == t_m {
        Err(Error::CoincidentNodes { n, m, value: t_n })
    } else {
        Ok(())
    }
}

/// `ψ(n, x)` for `n` inside the window.
pub fn kernel_inside(n: i64, x: f64, axis: &AxisNodes) -> Result<KernelEval> {
    if !axis.contains(n) {
        return Err(Error::domain(
            "kernel_inside",
            format!("n = {n} is outside the window [{}, {}]", axis.lo(), axis.hi()),
        ));
    }
    kernel(n, x, axis)
}

/// `ψ(n, x)` for `n` outside the window, where `t_n = n`.
pub fn kernel_outside(n: i64, x: f64, axis: &AxisNodes) -> Result<KernelEval> {
    if axis.contains(n) {
        return Err(Error::domain(
            "kernel_outside",
            format!("n = {n} is inside the window [{}, {}]", axis.lo(), axis.hi()),
        ));
    }
    kernel(n, x, axis)
}

/// Tensor-product kernel `∏_j ψ_{N_j}(n_j, x_j)`.
pub fn kernel_tensor(n: &[i64], x: &[f64], ns: &NodeSet) -> Result<KernelEval> {
    if n.len() != ns.dim() || x.len() != ns.dim() {
        return Err(Error::Dimension {
            expected: ns.dim(),
            got: n.len().min(x.len()),
        });
    }
    let mut sign = 1i8;
    let mut log_abs = 0.0;
    for (j, ax) in ns.axes().iter().enumerate() {
        let k = kernel(n[j], x[j], ax)?;
        if k.is_zero() {
            return Ok(KernelEval::zero());
        }
        sign *= k.sign;
        log_abs += k.log_abs;
    }
    Ok(KernelEval {
        value: f64::from(sign) * log_abs.exp(),
        log_abs,
        sign,
    })
}

/// `ψ(n, x)` for every `n` in the window, in index order.
pub fn window_kernels(x: f64, axis: &AxisNodes) -> Result<Vec<f64>> {
    axis.indices()
        .map(|n| kernel(n, x, axis).map(|k| k.value))
        .collect()
}
