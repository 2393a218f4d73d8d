//! Bandlimited test signals of known exponential type, and their `L^q` norms.
//!
//! Every signal is a tensor product of one-dimensional sinc profiles, so the
//! type is exact and the decay envelope is analytic. Norm estimates used in
//! certificates are always upper estimates: quadrature value plus its error
//! estimate plus a rigorous bound on the truncated tails.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::sinc;
use crate::numeric::{compensated_sum, NeumaierSum};

/// One-dimensional bandlimited profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    /// `a · sinc((x - s)/scale)^k`, of type `kπ/scale`.
    SincPower {
        power: u32,
        scale: f64,
        shift: f64,
        amplitude: f64,
    },
    /// `Σ a_i sinc(x - s_i)`, of type `π`.
    SincCombo { terms: Vec<(f64, f64)> },
}

impl Profile {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::SincPower {
                power,
                scale,
                shift,
                amplitude,
            } => amplitude * sinc((x - shift) / scale).powi(*power as i32),
            Profile::SincCombo { terms } => {
                compensated_sum(terms.iter().map(|&(a, s)| a * sinc(x - s)))
            }
        }
    }

    pub fn exponential_type(&self) -> f64 {
        match self {
            Profile::SincPower { power, scale, .. } => f64::from(*power) * PI / scale,
            Profile::SincCombo { .. } => PI,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Profile::SincPower { amplitude, .. } => *amplitude == 0.0,
            Profile::SincCombo { terms } => terms.iter().all(|&(a, _)| a == 0.0),
        }
    }

    fn center(&self) -> f64 {
        match self {
            Profile::SincPower { shift, .. } => *shift,
            Profile::SincCombo { terms } if !terms.is_empty() => {
                terms.iter().map(|t| t.1).sum::<f64>() / terms.len() as f64
            }
            Profile::SincCombo { .. } => 0.0,
        }
    }

    /// Whether the profile lies in `L^q`.
    pub fn in_lq(&self, q: f64) -> bool {
        if self.is_zero() {
            return true;
        }
        match self {
            Profile::SincPower { power, .. } => f64::from(*power) * q > 1.0,
            Profile::SincCombo { .. } => q > 1.0,
        }
    }

    /// Upper bound on `∫_{|x - center| > radius} |f|^q`.
    fn tail_bound(&self, q: f64, radius: f64) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        match self {
            Profile::SincPower {
                power,
                scale,
                amplitude,
                ..
            } => {
                // |f| <= |a| (scale/(π|x - s|))^k
                let kq = f64::from(*power) * q;
                if kq <= 1.0 {
                    return Err(Error::NonConvergentTail(format!(
                        "|sinc|^{kq} is not integrable"
                    )));
                }
                Ok(2.0 * amplitude.abs().powf(q) * (scale / PI).powf(kq) * radius.powf(1.0 - kq)
                    / (kq - 1.0))
            }
            Profile::SincCombo { terms } => {
                // |f| <= A / (π(|x - c| - S)) for |x - c| > S
                if q <= 1.0 {
                    return Err(Error::NonConvergentTail(format!(
                        "sinc combinations are not in L^{q}"
                    )));
                }
                let c = self.center();
                let spread = terms.iter().map(|t| (t.1 - c).abs()).fold(0.0, f64::max);
                if radius <= spread + 1.0 {
                    return Err(Error::NonConvergentTail(format!(
                        "quadrature radius {radius} does not clear the shifts (spread {spread})"
                    )));
                }
                let a: f64 = terms.iter().map(|t| t.0.abs()).sum();
                Ok(2.0 * (a / PI).powf(q) * (radius - spread).powf(1.0 - q) / (q - 1.0))
            }
        }
    }

    /// Exact `‖f‖_q` where a closed form is known.
    pub fn declared_norm(&self, q: f64) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        if q != 2.0 {
            return None;
        }
        match self {
            // ∫ sinc^{2k}: 1, 2/3, 11/20 for k = 1, 2, 3.
            Profile::SincPower {
                power,
                scale,
                amplitude,
                ..
            } => {
                let moment = match power {
                    1 => 1.0,
                    2 => 2.0 / 3.0,
                    3 => 11.0 / 20.0,
                    _ => return None,
                };
                Some(amplitude.abs() * (scale * moment).sqrt())
            }
            // <sinc(· - s), sinc(· - t)> = sinc(s - t)
            Profile::SincCombo { terms } => {
                let gram = compensated_sum(terms.iter().flat_map(|&(a, s)| {
                    terms.iter().map(move |&(b, t)| a * b * sinc(s - t))
                }));
                Some(gram.max(0.0).sqrt())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalKind {
    SincPower,
    ShiftedSincCombo,
    TensorProduct,
}

impl FromStr for SignalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sinc_power" => Ok(SignalKind::SincPower),
            "shifted_sinc_combo" => Ok(SignalKind::ShiftedSincCombo),
            "tensor_product" => Ok(SignalKind::TensorProduct),
            other => Err(Error::Config(format!("unknown signal.kind '{other}'"))),
        }
    }
}

/// A tensor product of one-dimensional profiles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Signal {
    pub axes: Vec<Profile>,
    pub description: String,
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

impl Signal {
    pub fn from_profile(profile: Profile, description: impl Into<String>) -> Self {
        Self {
            axes: vec![profile],
            description: description.into(),
        }
    }

    /// `sinc(x)` in one variable.
    pub fn sinc() -> Self {
        Self::from_profile(
            Profile::SincPower {
                power: 1,
                scale: 1.0,
                shift: 0.0,
                amplitude: 1.0,
            },
            "sinc",
        )
    }

    /// `sinc(x/k)^k`, type π.
    pub fn sinc_power(k: u32) -> Self {
        Self::from_profile(
            Profile::SincPower {
                power: k,
                scale: f64::from(k),
                shift: 0.0,
                amplitude: 1.0,
            },
            format!("sinc(x/{k})^{k}"),
        )
    }

    pub fn combo(terms: Vec<(f64, f64)>) -> Self {
        let description = if terms.is_empty() {
            "zero".to_string()
        } else {
            terms
                .iter()
                .map(|(a, s)| format!("{a}·sinc(x-{s})"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        Self::from_profile(Profile::SincCombo { terms }, description)
    }

    pub fn zero() -> Self {
        Self::combo(Vec::new())
    }

    pub fn tensor(factors: Vec<Signal>) -> Self {
        let description = factors
            .iter()
            .map(|s| format!("({})", s.description))
            .collect::<Vec<_>>()
            .join(" ⊗ ");
        Self {
            axes: factors.into_iter().flat_map(|s| s.axes).collect(),
            description,
        }
    }

    /// The same one-dimensional signal on each of `d` axes.
    pub fn replicate(&self, d: usize) -> Self {
        if d == 1 || self.dim() != 1 {
            return self.clone();
        }
        Self::tensor(vec![self.clone(); d])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        self.axes.iter().zip(x).map(|(p, &xj)| p.eval(xj)).product()
    }

    pub fn exponential_type(&self) -> Vec<f64> {
        self.axes.iter().map(Profile::exponential_type).collect()
    }

    pub fn declared_norm(&self, q: f64) -> Option<f64> {
        self.axes.iter().map(|p| p.declared_norm(q)).product()
    }

    pub fn validate(&self, q: f64) -> Result<()> {
        for (j, p) in self.axes.iter().enumerate() {
            let sigma = p.exponential_type();
            if sigma > PI * (1.0 + 1e-12) {
                return Err(Error::InvalidSignal(format!(
                    "axis {j}: exponential type {sigma} exceeds π"
                )));
            }
            if !p.in_lq(q) {
                return Err(Error::InvalidSignal(format!(
                    "axis {j}: {} is not in L^{q}",
                    self.description
                )));
            }
        }
        Ok(())
    }
}

/// Build a bank signal from a kind and a flat parameter list.
///
/// * `sinc_power`: `k[, scale[, shift[, amplitude]]]`, scale defaulting to `k`.
/// * `shifted_sinc_combo`: `a_1, s_1, a_2, s_2, …`.
/// * `tensor_product`: one `sinc_power` exponent per axis.
pub fn make_signal(kind: SignalKind, params: &[f64], q: f64) -> Result<Signal> {
    let signal = match kind {
        SignalKind::SincPower => {
            let k = power_param(params.first().copied().unwrap_or(1.0))?;
            let scale = params.get(1).copied().unwrap_or(f64::from(k));
            let shift = params.get(2).copied().unwrap_or(0.0);
            let amplitude = params.get(3).copied().unwrap_or(1.0);
            if params.len() > 4 {
                return Err(Error::InvalidSignal(
                    "sinc_power takes at most 4 parameters".into(),
                ));
            }
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::InvalidSignal(format!("scale {scale} must be > 0")));
            }
            let plain = shift == 0.0 && amplitude == 1.0;
            let description = if plain && k == 1 && scale == 1.0 {
                "sinc".to_string()
            } else if plain && scale == f64::from(k) {
                format!("sinc(x/{k})^{k}")
            } else {
                format!("{amplitude}·sinc((x-{shift})/{scale})^{k}")
            };
            Signal::from_profile(
                Profile::SincPower {
                    power: k,
                    scale,
                    shift,
                    amplitude,
                },
                description,
            )
        }
        SignalKind::ShiftedSincCombo => {
            if !params.len().is_multiple_of(2) {
                return Err(Error::InvalidSignal(
                    "shifted_sinc_combo takes amplitude,shift pairs".into(),
                ));
            }
            Signal::combo(params.chunks(2).map(|c| (c[0], c[1])).collect())
        }
        SignalKind::TensorProduct => {
            if params.is_empty() {
                return Err(Error::InvalidSignal(
                    "tensor_product needs one exponent per axis".into(),
                ));
            }
            let factors = params
                .iter()
                .map(|&k| power_param(k).map(Signal::sinc_power))
                .collect::<Result<Vec<_>>>()?;
            Signal::tensor(factors)
        }
    };
    if params.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidSignal("parameters must be finite".into()));
    }
    signal.validate(q)?;
    Ok(signal)
}

fn power_param(k: f64) -> Result<u32> {
    if k >= 1.0 && k.fract() == 0.0 && k <= 64.0 {
        Ok(k as u32)
    } else {
        Err(Error::InvalidSignal(format!(
            "sinc power {k} must be an integer in [1, 64]"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    Midpoint,
    Simpson,
}

/// Quadrature over `[c - radius, c + radius]` around each profile's center.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub radius: f64,
    pub per_unit: u32,
    pub rule: QuadratureRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radius: 16384.0,
            per_unit: 64,
            rule: QuadratureRule::Simpson,
        }
    }
}

/// `‖f‖_q` with the pieces of its certified overestimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    /// `|I_h - I_{2h}|` on `∫|f|^q`.
    pub quadrature_error: f64,
    /// Bound on `∫|f|^q` outside the quadrature range.
    pub tail_bound: f64,
    /// `(I + quadrature_error + tail_bound)^{1/q}`.
    pub upper: f64,
}

const CHUNK: usize = 1 << 15;

/// `(I_h, I_{2h})` for `∫ g` over `[a, b]` with `n` intervals, `n % 4 == 0`.
fn integrate<G: Fn(f64) -> f64 + Sync>(g: G, a: f64, b: f64, n: usize, rule: QuadratureRule) -> (f64, f64) {
    let h = (b - a) / n as f64;
    // Fixed chunking keeps the result independent of the thread count.
    let chunk_sums = |count: usize, term: &(dyn Fn(usize) -> (f64, f64) + Sync)| -> (f64, f64) {
        let parts: Vec<(NeumaierSum, NeumaierSum)> = (0..count.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut fine = NeumaierSum::new();
                let mut coarse = NeumaierSum::new();
                for i in c * CHUNK..((c + 1) * CHUNK).min(count) {
                    let (f, cr) = term(i);
                    fine.add(f);
                    coarse.add(cr);
                }
                (fine, coarse)
            })
            .collect();
        let mut fine = NeumaierSum::new();
        let mut coarse = NeumaierSum::new();
        for (f, c) in parts {
            fine.add(f.value());
            coarse.add(c.value());
        }
        (fine.value(), coarse.value())
    };
    match rule {
        QuadratureRule::Simpson => {
            let term = |i: usize| {
                let v = g(a + i as f64 * h);
                let fine_w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let coarse_w = if i % 2 == 1 {
                    0.0
                } else if i == 0 || i == n {
                    1.0
                } else if (i / 2) % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                (fine_w * v, coarse_w * v)
            };
            let (fine, coarse) = chunk_sums(n + 1, &term);
            (fine * h / 3.0, coarse * 2.0 * h / 3.0)
        }
        QuadratureRule::Midpoint => {
            // Fine midpoints a + (i + 1/2)h; coarse midpoints a + (2m + 1)h.
            let term = |i: usize| {
                let fine = g(a + (i as f64 + 0.5) * h);
                let coarse = if i < n / 2 {
                    g(a + (2 * i + 1) as f64 * h)
                } else {
                    0.0
                };
                (fine, coarse)
            };
            let (fine, coarse) = chunk_sums(n, &term);
            (fine * h, coarse * 2.0 * h)
        }
    }
}

fn profile_norm(p: &Profile, q: f64, spec: &QuadratureSpec) -> Result<NormEstimate> {
    if p.is_zero() {
        return Ok(NormEstimate {
            value: 0.0,
            quadrature_error: 0.0,
            tail_bound: 0.0,
            upper: 0.0,
        });
    }
    if !(q >= 1.0) {
        return Err(Error::domain("lq_norm", format!("q = {q} must be >= 1")));
    }
    let tail_bound = p.tail_bound(q, spec.radius)?;
    let c = p.center();
    let intervals = 4 * ((spec.radius * f64::from(spec.per_unit) / 2.0).ceil() as usize).max(1);
    let (fine, coarse) = if q == 2.0 {
        integrate(|x| p.eval(x).powi(2), c - spec.radius, c + spec.radius, intervals, spec.rule)
    } else {
        integrate(|x| p.eval(x).abs().powf(q), c - spec.radius, c + spec.radius, intervals, spec.rule)
    };
    let quadrature_error = (fine - coarse).abs();
    Ok(NormEstimate {
        value: fine.max(0.0).powf(1.0 / q),
        quadrature_error,
        tail_bound,
        upper: (fine + quadrature_error + tail_bound).powf(1.0 / q),
    })
}

/// `‖f‖_q` by quadrature, per axis, multiplied across axes.
pub fn lq_norm(signal: &Signal, q: f64, spec: &QuadratureSpec) -> Result<NormEstimate> {
    let mut out = NormEstimate {
        value: 1.0,
        quadrature_error: 0.0,
        tail_bound: 0.0,
        upper: 1.0,
    };
    for p in &signal.axes {
        let e = profile_norm(p, q, spec)?;
        out.value *= e.value;
        out.upper *= e.upper;
        out.quadrature_error += e.quadrature_error;
        out.tail_bound += e.tail_bound;
    }
    Ok(out)
}

/// The norm a certificate should use: the exact value when declared,
/// otherwise the quadrature upper estimate.
pub fn certified_norm(signal: &Signal, q: f64, spec: &QuadratureSpec) -> Result<f64> {
    match signal.declared_norm(q) {
        Some(v) => Ok(v),
        None => lq_norm(signal, q, spec).map(|e| e.upper),
    }
}
