//! Experiment runners for the four modes.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{k_bound, pp_constant_multi, BoundBreakdown, BoundInputs};
use crate::error::{Error, Result};
use crate::numeric::NeumaierSum;
use crate::reconstruct::{measure_error, ErrorReport};
use crate::sampling_set::{build_nodes, JitterSpec};
use crate::signal::{certified_norm, QuadratureSpec, Signal};

use super::config::{ExperimentConfig, Mode, SweepParam};
use super::report::{emit_report, fmt_f64, write_file, write_json, Envelope, ReportFormat};

/// Exit code for a measured value exceeding its certificate.
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOutcome {
    pub artifacts: Vec<PathBuf>,
    pub violations: Vec<String>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            0
        } else {
            EXIT_VIOLATION
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundOutput {
    pub inputs: BoundInputs,
    pub breakdown: BoundBreakdown,
}

pub fn bound_inputs(cfg: &ExperimentConfig) -> BoundInputs {
    match &cfg.deltas {
        Some(d) => BoundInputs::new(cfg.radii.clone(), cfg.jitter.amplitudes.clone(), d.clone(), cfg.q),
        None => BoundInputs::with_worst_separation(cfg.radii.clone(), cfg.jitter.amplitudes.clone(), cfg.q),
    }
}

/// Sampled Plancherel–Pólya sum against its bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PpCheckReport {
    pub q: f64,
    pub extent: u32,
    /// Realised separation of the sampled node set, per axis.
    pub deltas: Vec<f64>,
    pub sigmas: Vec<f64>,
    /// `Σ_{|n_j| ≤ extent} |f(t_n)|^q`.
    pub sampled_sum: f64,
    pub pp_constant: f64,
    pub norm_upper: f64,
    /// `sampled_sum / (pp_constant · norm_upper^q)`; at most 1.
    pub ratio: f64,
}

/// `Σ|f(t_n)|^q / (𝔅_{d,q} ‖f‖_q^q)` over `|n_j| ≤ extent`, with every node
/// in that box jittered.
///
/// Signals and node sets are tensor products, so the sum is the product of
/// per-axis sums.
pub fn pp_check(
    signal: &Signal,
    jitter: &JitterSpec,
    extent: u32,
    q: f64,
    quadrature: &QuadratureSpec,
) -> Result<PpCheckReport> {
    let d = signal.dim();
    signal.validate(q)?;
    let ns = build_nodes(&vec![0.0; d], &vec![extent; d], jitter)?;
    let sampled_sum: f64 = signal
        .axes
        .iter()
        .zip(ns.axes())
        .map(|(profile, axis)| {
            let mut s = NeumaierSum::new();
            for &t in axis.window_nodes() {
                s.add(profile.eval(t).abs().powf(q));
            }
            s.value()
        })
        .product();
    let deltas: Vec<f64> = ns.axes().iter().map(|a| a.separation()).collect();
    let sigmas = signal.exponential_type();
    let pp_constant = pp_constant_multi(q, &deltas, &sigmas)?;
    let norm_upper = certified_norm(signal, q, quadrature)?;
    let denom = pp_constant * norm_upper.powf(q);
    let ratio = if denom > 0.0 {
        sampled_sum / denom
    } else if sampled_sum == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(PpCheckReport {
        q,
        extent,
        deltas,
        sigmas,
        sampled_sum,
        pp_constant,
        norm_upper,
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub k_delta: f64,
    pub log_k_delta: f64,
    pub a_p: f64,
    pub b_q: f64,
    pub sup_error: Option<f64>,
    pub certified_bound: Option<f64>,
    pub tightness: Option<f64>,
}

fn sweep_point(cfg: &ExperimentConfig, param: SweepParam, value: f64) -> ExperimentConfig {
    let mut c = cfg.clone();
    match param {
        SweepParam::WindowN => c.radii = vec![value as u32; c.dim],
        SweepParam::JitterM => c.jitter.amplitudes = vec![value; c.dim],
        SweepParam::Q => c.q = value,
    }
    c
}

/// One row per sweep value, in the configured order.
pub fn sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("sweep mode needs sweep.param and sweep.values".into()))?;
    spec.values
        .par_iter()
        .map(|&value| {
            let point = sweep_point(cfg, spec.param, value);
            let b = k_bound(&bound_inputs(&point))?;
            let mut row = SweepRow {
                value,
                k_delta: b.k_delta,
                log_k_delta: b.log_k_delta,
                a_p: b.a_p,
                b_q: b.b_q,
                sup_error: None,
                certified_bound: None,
                tightness: None,
            };
            if spec.reconstruct {
                let r = measure_error(&point.request()?)?;
                row.sup_error = Some(r.sup_error);
                row.certified_bound = r.certified_bound;
                row.tightness = r.tightness;
            }
            Ok(row)
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    let mut out = String::from("value,k_delta,log_k_delta,a_p,b_q,sup_error,certified_bound,tightness\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt_f64(r.value),
            fmt_f64(r.k_delta),
            fmt_f64(r.log_k_delta),
            fmt_f64(r.a_p),
            fmt_f64(r.b_q),
            opt(r.sup_error),
            opt(r.certified_bound),
            opt(r.tightness),
        ));
    }
    out
}

fn violated(tightness: Option<f64>) -> bool {
    tightness.is_some_and(|t| !(t <= 1.0))
}

/// Run one experiment and write its artifacts under `cfg.out_dir`.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    let out = &cfg.out_dir;
    let mut outcome = RunOutcome::default();
    match cfg.mode {
        Mode::Bound => {
            let inputs = bound_inputs(cfg);
            let breakdown = k_bound(&inputs)?;
            let path = out.join("bound.json");
            write_json(&path, &Envelope::new("bound", cfg.echo.clone(), BoundOutput { inputs, breakdown }))?;
            outcome.artifacts.push(path);
        }
        Mode::Reconstruct => {
            let report: ErrorReport = measure_error(&cfg.request()?)?;
            if cfg.residuals {
                let path = out.join("residuals.csv");
                outcome
                    .artifacts
                    .push(emit_report(&report, ReportFormat::Csv, &path, cfg.dim, &cfg.echo)?);
            }
            let path = out.join("summary.json");
            outcome
                .artifacts
                .push(emit_report(&report, ReportFormat::Json, &path, cfg.dim, &cfg.echo)?);
            if violated(report.tightness) {
                outcome.violations.push(format!(
                    "sup error {} exceeds certified bound {:?}",
                    report.sup_error, report.certified_bound
                ));
            }
        }
        Mode::Sweep => {
            let rows = sweep(cfg)?;
            let path = out.join("sweep.csv");
            write_file(&path, &sweep_csv(&rows))?;
            outcome.artifacts.push(path);
            let path = out.join("summary.json");
            write_json(&path, &Envelope::new("sweep", cfg.echo.clone(), &rows))?;
            outcome.artifacts.push(path);
            for r in rows.iter().filter(|r| violated(r.tightness)) {
                outcome.violations.push(format!(
                    "value {}: sup error {:?} exceeds certified bound {:?}",
                    r.value, r.sup_error, r.certified_bound
                ));
            }
        }
        Mode::PpCheck => {
            let report = pp_check(&cfg.signal()?, &cfg.jitter, cfg.ppcheck_extent, cfg.q, &cfg.quadrature)?;
            let path = out.join("ppcheck.json");
            write_json(&path, &Envelope::new("ppcheck", cfg.echo.clone(), &report))?;
            outcome.artifacts.push(path);
            if !(report.ratio <= 1.0) {
                outcome
                    .violations
                    .push(format!("Plancherel–Pólya ratio {} exceeds 1", report.ratio));
            }
        }
    }
    Ok(outcome)
}
