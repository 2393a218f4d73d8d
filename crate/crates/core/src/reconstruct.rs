//! The truncated sampling sum `Y(f; x)` over the window around `x`, and
//! measured truncation errors with their certificates.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{k_bound, BoundBreakdown, BoundInputs};
use crate::error::{Error, Result};
use crate::kernel::window_kernels;
use crate::numeric::NeumaierSum;
use crate::sampling_set::{build_nodes, JitterSpec};
use crate::signal::{certified_norm, QuadratureSpec, Signal};

/// `Y(g; x)` for an arbitrary sample function `g`.
///
/// The node set is rebuilt around `x`, so jitter only lives inside the
/// window. Terms are added in lexicographic index order.
pub fn truncated_sum_with<F>(g: F, x: &[f64], radii: &[u32], jitter: &JitterSpec) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let ns = build_nodes(x, radii, jitter)?;
    let d = ns.dim();
    let kernels = x
        .iter()
        .zip(ns.axes())
        .map(|(&xj, ax)| window_kernels(xj, ax))
        .collect::<Result<Vec<_>>>()?;
    let nodes: Vec<&[f64]> = ns.axes().iter().map(|ax| ax.window_nodes()).collect();

    let mut idx = vec![0usize; d];
    let mut point: Vec<f64> = nodes.iter().map(|t| t[0]).collect();
    let mut sum = NeumaierSum::new();
    loop {
        let weight: f64 = idx.iter().zip(&kernels).map(|(&i, k)| k[i]).product();
        if weight != 0.0 {
            sum.add(g(&point) * weight);
        }
        // Odometer, last axis fastest.
        let mut axis = d;
        loop {
            if axis == 0 {
                return Ok(sum.value());
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < nodes[axis].len() {
                point[axis] = nodes[axis][idx[axis]];
                break;
            }
            idx[axis] = 0;
            point[axis] = nodes[axis][0];
        }
    }
}

/// `Y(f; x) = Σ_{n ∈ 𝔍_x} f(t_n) ψ(n, x)`.
pub fn truncated_sum(signal: &Signal, x: &[f64], radii: &[u32], jitter: &JitterSpec) -> Result<f64> {
    if signal.dim() != x.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: signal.dim(),
        });
    }
    truncated_sum_with(|t| signal.eval(t), x, radii, jitter)
}

/// One axis of a rectangular grid, `lo, lo + step, …` up to `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
            return Err(Error::Config(format!(
                "grid axis {lo}:{hi}:{step} needs finite lo <= hi and step > 0"
            )));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for GridAxis {
    type Err = Error;

    /// `LO:HI:STEP`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!("grid '{s}' is not LO:HI:STEP")));
        }
        let v = parts
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("grid '{s}': '{p}' is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(v[0], v[1], v[2])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grid {
    Points(Vec<Vec<f64>>),
    Rect(Vec<GridAxis>),
}

impl Grid {
    /// Grid points in lexicographic order for rectangular grids.
    pub fn points(&self) -> Vec<Vec<f64>> {
        match self {
            Grid::Points(p) => p.clone(),
            Grid::Rect(axes) if axes.is_empty() => Vec::new(),
            Grid::Rect(axes) => {
                let per_axis: Vec<Vec<f64>> = axes.iter().map(GridAxis::points).collect();
                let mut out = vec![Vec::new()];
                for values in &per_axis {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            values.iter().map(move |&v| {
                                let mut p = prefix.clone();
                                p.push(v);
                                p
                            })
                        })
                        .collect();
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionRequest {
    pub signal: Signal,
    pub radii: Vec<u32>,
    pub jitter: JitterSpec,
    pub grid: Grid,
    /// Norm index for the certificate.
    pub q: f64,
    pub certify: bool,
    pub quadrature: QuadratureSpec,
}

impl ReconstructionRequest {
    pub fn new(signal: Signal, radii: Vec<u32>, jitter: JitterSpec, grid: Grid) -> Self {
        Self {
            signal,
            radii,
            jitter,
            grid,
            q: 2.0,
            certify: true,
            quadrature: QuadratureSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.radii.len();
        for got in [self.signal.dim(), self.jitter.dim()] {
            if got != d {
                return Err(Error::Dimension { expected: d, got });
            }
        }
        if let Grid::Rect(axes) = &self.grid {
            if axes.len() != d && !axes.is_empty() {
                return Err(Error::Dimension {
                    expected: d,
                    got: axes.len(),
                });
            }
        }
        for (j, sigma) in self.signal.exponential_type().into_iter().enumerate() {
            if sigma > std::f64::consts::PI * (1.0 + 1e-12) {
                return Err(Error::InvalidSignal(format!(
                    "axis {j}: exponential type {sigma} exceeds π"
                )));
            }
        }
        self.jitter.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    pub x: Vec<f64>,
    pub f: f64,
    pub y: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub sup_error: f64,
    pub argmax: Option<Vec<f64>>,
    pub grid_points: usize,
    pub certified: bool,
    pub uncertified_reason: Option<String>,
    pub k_delta: Option<f64>,
    pub norm_upper: Option<f64>,
    pub certified_bound: Option<f64>,
    pub tightness: Option<f64>,
    pub bound: Option<BoundBreakdown>,
    #[serde(skip)]
    pub points: Vec<PointResidual>,
}

impl ErrorReport {
    /// False only when a certificate exists and the measurement exceeds it.
    pub fn within_bound(&self) -> bool {
        match self.tightness {
            Some(t) => t <= 1.0,
            None => true,
        }
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Residuals `|f(x) - Y(f; x)|` over the grid, with the certificate when
/// the configuration admits one.
pub fn measure_error(req: &ReconstructionRequest) -> Result<ErrorReport> {
    req.validate()?;
    let grid = req.grid.points();
    if let Some(bad) = grid.iter().find(|p| p.iter().any(|v| !v.is_finite())) {
        return Err(Error::Config(format!("grid point {bad:?} is not finite")));
    }
    let points = grid
        .into_par_iter()
        .map(|x| {
            let f = req.signal.eval(&x);
            let y = truncated_sum(&req.signal, &x, &req.radii, &req.jitter)?;
            Ok(PointResidual {
                residual: (f - y).abs(),
                x,
                f,
                y,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sup_error = 0.0f64;
    let mut argmax: Option<&PointResidual> = None;
    for p in &points {
        let better = match argmax {
            None => true,
            Some(best) => {
                p.residual.is_nan() && !best.residual.is_nan()
                    || p.residual > best.residual
                    || p.residual == best.residual && lex_cmp(&p.x, &best.x) == Ordering::Less
            }
        };
        if better {
            argmax = Some(p);
            sup_error = p.residual;
        }
    }
    let argmax = argmax.map(|p| p.x.clone());

    let mut report = ErrorReport {
        sup_error,
        argmax,
        grid_points: points.len(),
        certified: false,
        uncertified_reason: None,
        k_delta: None,
        norm_upper: None,
        certified_bound: None,
        tightness: None,
        bound: None,
        points,
    };
    if !req.certify {
        report.uncertified_reason = Some("certification not requested".into());
        return Ok(report);
    }
    let inputs = BoundInputs::with_worst_separation(
        req.radii.clone(),
        req.jitter.amplitudes.clone(),
        req.q,
    );
    let certificate = k_bound(&inputs).and_then(|b| {
        req.signal.validate(req.q)?;
        let norm = certified_norm(&req.signal, req.q, &req.quadrature)?;
        Ok((b, norm))
    });
    match certificate {
        Ok((bound, norm)) => {
            let certified_bound = bound.k_delta * norm;
            report.certified = true;
            report.k_delta = Some(bound.k_delta);
            report.norm_upper = Some(norm);
            report.certified_bound = Some(certified_bound);
            report.tightness = Some(if certified_bound > 0.0 {
                sup_error / certified_bound
            } else if sup_error == 0.0 {
                0.0
            } else {
                f64::INFINITY
            });
            report.bound = Some(bound);
        }
        Err(e) => report.uncertified_reason = Some(e.to_string()),
    }
    Ok(report)
}
