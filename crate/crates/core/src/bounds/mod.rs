//! Plancherel–Pólya constants and the universal truncation bounds `K_δ` and `K̃`.

mod constants;
mod lambert;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use constants::{
    asymptotic_exponent, c1, c2, c3, c4, ln_c1, ln_c2, ln_c3, BoundConstant,
};
pub use lambert::{delta_star, lambert_w0_real, pp_profile, z_star};

use crate::error::{Error, Result};
use crate::sampling_set::{admissible, AdmissibilityMode};

/// One-dimensional Plancherel–Pólya constant `8(e^{rδσ/2} - 1)/(rπσδ²)`.
pub fn pp_constant_1d(r: f64, delta: f64, sigma: f64) -> f64 {
    8.0 * (r * delta * sigma / 2.0).exp_m1() / (r * PI * sigma * delta * delta)
}

/// `𝔅_{d,r}`, the product of the per-axis one-dimensional constants.
pub fn pp_constant_multi(r: f64, deltas: &[f64], sigmas: &[f64]) -> Result<f64> {
    if deltas.len() != sigmas.len() {
        return Err(Error::Dimension {
            expected: deltas.len(),
            got: sigmas.len(),
        });
    }
    if !(r >= 1.0) {
        return Err(Error::domain("pp_constant", format!("r = {r} must be >= 1")));
    }
    if deltas.iter().chain(sigmas).any(|v| !(*v > 0.0)) {
        return Err(Error::domain(
            "pp_constant",
            "separations and types must be positive",
        ));
    }
    Ok(deltas
        .iter()
        .zip(sigmas)
        .map(|(&d, &s)| pp_constant_1d(r, d, s))
        .product())
}

/// Hölder conjugate of `q`.
pub fn conjugate(q: f64) -> f64 {
    q / (q - 1.0)
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// Inputs of `K_δ(N, M)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub radii: Vec<u32>,
    pub amplitudes: Vec<f64>,
    pub deltas: Vec<f64>,
    pub q: f64,
}

impl BoundInputs {
    pub fn new(radii: Vec<u32>, amplitudes: Vec<f64>, deltas: Vec<f64>, q: f64) -> Self {
        Self {
            radii,
            amplitudes,
            deltas,
            q,
        }
    }

    /// Separations taken as the guaranteed lower bound `δ_j = 1 - 2M_j`.
    pub fn with_worst_separation(radii: Vec<u32>, amplitudes: Vec<f64>, q: f64) -> Self {
        let deltas = amplitudes.iter().map(|m| 1.0 - 2.0 * m).collect();
        Self::new(radii, amplitudes, deltas, q)
    }

    pub fn dim(&self) -> usize {
        self.radii.len()
    }

    pub fn p(&self) -> f64 {
        conjugate(self.q)
    }

    pub fn max_amplitude(&self) -> f64 {
        self.amplitudes.iter().copied().fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        for len in [self.amplitudes.len(), self.deltas.len()] {
            if len != d {
                return Err(Error::Dimension { expected: d, got: len });
            }
        }
        if d == 0 {
            return Err(Error::domain("K_delta", "dimension must be >= 1"));
        }
        if self.q == 1.0 {
            return Err(Error::domain("K_delta", "bound not available for q=1"));
        }
        if !(self.q.is_finite() && self.q > 1.0) {
            return Err(Error::domain("K_delta", format!("q = {} must be > 1", self.q)));
        }
        for j in 0..d {
            let (m, delta) = (self.amplitudes[j], self.deltas[j]);
            if !(0.0..0.5).contains(&m) {
                return Err(Error::domain(
                    "K_delta",
                    format!("M_{j} = {m} must lie in [0, 1/2)"),
                ));
            }
            // Rounding slack so that δ = 1 - 2M computed elsewhere passes.
            if !(delta > 0.0 && delta >= 1.0 - 2.0 * m - 1e-12) {
                return Err(Error::domain(
                    "K_delta",
                    format!("δ_{j} = {delta} must be >= 1 - 2M_{j} = {}", 1.0 - 2.0 * m),
                ));
            }
        }
        let mt = self.max_amplitude();
        if !admissible(mt, self.q, d, AdmissibilityMode::Expansion) {
            return Err(Error::NotAdmissible(format!(
                "M̃ = {mt} violates M̃ < 1/(4q) = {} for q = {}",
                1.0 / (4.0 * self.q),
                self.q
            )));
        }
        Ok(())
    }
}

/// Every intermediate of `K_δ`, with natural-log companions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundBreakdown {
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
    pub c3: Vec<f64>,
    pub c4: Vec<f64>,
    pub a_p: f64,
    pub b_q: f64,
    pub k_delta: f64,
    pub log_a_p: f64,
    pub log_b_q: f64,
    pub log_k_delta: f64,
}

struct AxisConstants {
    ln_c1: f64,
    ln_c2: f64,
    ln_c3: f64,
    c4: f64,
}

fn axis_constants(n: u32, m: f64, delta: f64, p: f64) -> Result<AxisConstants> {
    Ok(AxisConstants {
        ln_c1: ln_c1(n, m, p)?,
        ln_c2: ln_c2(n, m, delta)?,
        ln_c3: ln_c3(n, m)?,
        c4: c4(n, p)?,
    })
}

/// `ln A_p^p = ln Σ_k C₁(k) ∏_{j≠k} (C₁ + C₃^p + C₄ C₂^p)(j)`.
fn ln_a_p_pow(axes: &[AxisConstants], p: f64) -> f64 {
    let per_axis: Vec<f64> = axes
        .iter()
        .map(|a| log_sum_exp(&[a.ln_c1, p * a.ln_c3, a.c4.ln() + p * a.ln_c2]))
        .collect();
    let terms: Vec<f64> = (0..axes.len())
        .map(|k| {
            axes[k].ln_c1
                + per_axis
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, s)| s)
                    .sum::<f64>()
        })
        .collect();
    log_sum_exp(&terms)
}

fn breakdown(axes: &[AxisConstants], p: f64, log_b_q: f64) -> BoundBreakdown {
    let log_a_p = ln_a_p_pow(axes, p) / p;
    let log_k_delta = log_a_p + log_b_q;
    BoundBreakdown {
        c1: axes.iter().map(|a| a.ln_c1.exp()).collect(),
        c2: axes.iter().map(|a| a.ln_c2.exp()).collect(),
        c3: axes.iter().map(|a| a.ln_c3.exp()).collect(),
        c4: axes.iter().map(|a| a.c4).collect(),
        a_p: log_a_p.exp(),
        b_q: log_b_q.exp(),
        k_delta: log_k_delta.exp(),
        log_a_p,
        log_b_q,
        log_k_delta,
    }
}

/// `K_δ(N, M)` with σ_j = π on every axis.
pub fn k_bound(inputs: &BoundInputs) -> Result<BoundBreakdown> {
    inputs.validate()?;
    let p = inputs.p();
    let q = inputs.q;
    let axes = (0..inputs.dim())
        .map(|j| {
            axis_constants(
                inputs.radii[j],
                inputs.amplitudes[j],
                inputs.deltas[j],
                p,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let log_b_q = inputs
        .deltas
        .iter()
        .map(|&delta| pp_constant_1d(q, delta, PI).ln())
        .sum::<f64>()
        / q;
    Ok(breakdown(&axes, p, log_b_q))
}

/// `K̃(N, M̃, δ̲, δ̄)`: one jitter bound and one separation range for all axes.
pub fn k_tilde(
    radii: &[u32],
    max_amplitude: f64,
    delta_lo: f64,
    delta_hi: f64,
    q: f64,
) -> Result<BoundBreakdown> {
    if !(delta_lo > 0.0 && delta_lo <= delta_hi) {
        return Err(Error::domain(
            "K_tilde",
            format!("need 0 < δ_lo <= δ_hi, got {delta_lo}, {delta_hi}"),
        ));
    }
    let d = radii.len();
    let inputs = BoundInputs::new(
        radii.to_vec(),
        vec![max_amplitude; d],
        vec![delta_lo; d],
        q,
    );
    inputs.validate()?;
    let p = inputs.p();
    let axes = radii
        .iter()
        .map(|&n| axis_constants(n, max_amplitude, delta_lo, p))
        .collect::<Result<Vec<_>>>()?;
    let b = pp_constant_1d(q, delta_lo, PI).max(pp_constant_1d(q, delta_hi, PI));
    let log_b_q = d as f64 / q * b.ln();
    Ok(breakdown(&axes, p, log_b_q))
}
