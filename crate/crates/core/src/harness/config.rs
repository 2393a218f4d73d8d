//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # d = 2, q = 2, admissible jitter
//! window.N      = 16,16
//! q             = 2
//! jitter.kind   = uniform
//! jitter.M      = 0.03,0.03
//! jitter.seed   = 7
//! signal.kind   = sinc_power
//! signal.params = 2
//! grid          = -1:1:0.05 -1:1:0.05
//! ```
//!
//! Lists are comma separated; a single value is repeated on every axis.
//! `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reconstruct::{Grid, GridAxis, ReconstructionRequest};
use crate::sampling_set::{parse_f64_list, JitterSpec};
use crate::signal::{make_signal, QuadratureRule, QuadratureSpec, Signal, SignalKind};

const KEYS: &[&str] = &[
    "mode",
    "dim",
    "window.N",
    "q",
    "jitter.kind",
    "jitter.M",
    "jitter.seed",
    "bound.delta",
    "signal.kind",
    "signal.params",
    "signal.q",
    "grid",
    "certify",
    "residuals",
    "sweep.param",
    "sweep.values",
    "sweep.reconstruct",
    "ppcheck.extent",
    "quad.radius",
    "quad.per_unit",
    "quad.rule",
    "out",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Bound,
    Reconstruct,
    Sweep,
    PpCheck,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Bound => "bound",
            Mode::Reconstruct => "reconstruct",
            Mode::Sweep => "sweep",
            Mode::PpCheck => "ppcheck",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bound" | "bound-only" => Ok(Mode::Bound),
            "reconstruct" => Ok(Mode::Reconstruct),
            "sweep" => Ok(Mode::Sweep),
            "ppcheck" | "pp-check" => Ok(Mode::PpCheck),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

/// The parameter varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParam {
    /// Window radius, applied to every axis.
    #[serde(rename = "window.N")]
    WindowN,
    /// Jitter amplitude, applied to every axis.
    #[serde(rename = "jitter.M")]
    JitterM,
    #[serde(rename = "q")]
    Q,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::WindowN => "window.N",
            SweepParam::JitterM => "jitter.M",
            SweepParam::Q => "q",
        })
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "window.N" | "N" => Ok(SweepParam::WindowN),
            "jitter.M" | "M" => Ok(SweepParam::JitterM),
            "q" => Ok(SweepParam::Q),
            other => Err(Error::Config(format!("unknown sweep.param '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
    pub reconstruct: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub dim: usize,
    pub radii: Vec<u32>,
    pub q: f64,
    pub jitter: JitterSpec,
    /// Separations for the bound; `1 - 2M_j` when absent.
    pub deltas: Option<Vec<f64>>,
    pub signal_kind: SignalKind,
    pub signal_params: Vec<f64>,
    pub grid: Vec<GridAxis>,
    pub certify: bool,
    pub residuals: bool,
    pub sweep: Option<SweepSpec>,
    pub ppcheck_extent: u32,
    pub quadrature: QuadratureSpec,
    pub out_dir: PathBuf,
    /// The resolved configuration as written to reports, without `out`.
    pub echo: BTreeMap<String, String>,
}

/// Parse `key = value` lines.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut kv = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = parse_assignment(line)
            .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        kv.insert(k, v);
    }
    Ok(kv)
}

/// `KEY=VALUE`, as given to `--set`.
pub fn parse_assignment(s: &str) -> Result<(String, String)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("expected KEY=VALUE, got '{s}'")))?;
    let k = k.trim();
    if !KEYS.contains(&k) {
        return Err(Error::Config(format!("unknown key '{k}'")));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

pub fn read_kv_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_kv(&text)
}

fn parse_one<T: FromStr>(kv: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    kv.get(key)
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| Error::Config(format!("{key}: cannot parse '{s}'")))
        })
        .transpose()
}

fn parse_bool(kv: &BTreeMap<String, String>, key: &str, default: bool) -> Result<bool> {
    match kv.get(key).map(String::as_str) {
        None => Ok(default),
        Some("true" | "yes" | "1") => Ok(true),
        Some("false" | "no" | "0") => Ok(false),
        Some(other) => Err(Error::Config(format!("{key}: not a boolean: '{other}'"))),
    }
}

/// Broadcast a one-element list to `d` axes.
fn per_axis<T: Clone>(values: Vec<T>, d: usize, key: &str) -> Result<Vec<T>> {
    match values.len() {
        1 => Ok(vec![values[0].clone(); d]),
        n if n == d => Ok(values),
        n => Err(Error::Config(format!("{key}: {n} values for {d} axes"))),
    }
}

fn parse_radii(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Config(format!("window.N: not a positive integer: '{t}'")))
        })
        .collect()
}

pub fn parse_grid(s: &str) -> Result<Vec<GridAxis>> {
    s.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

fn list_len(kv: &BTreeMap<String, String>, key: &str) -> Option<usize> {
    kv.get(key).map(|s| s.split(',').count())
}

impl ExperimentConfig {
    pub fn from_kv(kv: &BTreeMap<String, String>) -> Result<Self> {
        let mode = parse_one::<Mode>(kv, "mode")?.unwrap_or(Mode::Bound);
        let signal_kind = parse_one::<SignalKind>(kv, "signal.kind")?.unwrap_or(SignalKind::SincPower);
        let signal_params = match kv.get("signal.params") {
            Some(s) if !s.trim().is_empty() => parse_f64_list(s, "signal.params")?,
            _ => Vec::new(),
        };

        let dim = match parse_one::<usize>(kv, "dim")? {
            Some(d) => d,
            None => {
                let mut lens = vec![
                    list_len(kv, "window.N"),
                    list_len(kv, "jitter.M"),
                    list_len(kv, "bound.delta"),
                ];
                if signal_kind == SignalKind::TensorProduct {
                    lens.push(Some(signal_params.len()));
                }
                lens.push(kv.get("grid").map(|g| parse_grid(g).map(|v| v.len()).unwrap_or(1)));
                lens.into_iter().flatten().max().unwrap_or(1)
            }
        };
        if dim == 0 {
            return Err(Error::Config("dim must be >= 1".into()));
        }

        let radii = per_axis(
            parse_radii(kv.get("window.N").map(String::as_str).unwrap_or("16"))?,
            dim,
            "window.N",
        )?;
        let q = match (parse_one::<f64>(kv, "q")?, parse_one::<f64>(kv, "signal.q")?) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Config(format!("q = {a} and signal.q = {b} disagree")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => 2.0,
        };
        let mut jkv = kv.clone();
        jkv.entry("jitter.M".into()).or_insert_with(|| "0".into());
        let mut jitter = JitterSpec::from_kv(&jkv)?;
        jitter.amplitudes = per_axis(jitter.amplitudes, dim, "jitter.M")?;
        jitter.validate()?;
        let deltas = kv
            .get("bound.delta")
            .map(|s| parse_f64_list(s, "bound.delta").and_then(|v| per_axis(v, dim, "bound.delta")))
            .transpose()?;

        let grid = match kv.get("grid") {
            Some(g) => per_axis(parse_grid(g)?, dim, "grid")?,
            None => vec![GridAxis::new(-1.0, 1.0, 0.05)?; dim],
        };

        let sweep = match mode {
            Mode::Sweep => {
                let param = parse_one::<SweepParam>(kv, "sweep.param")?.unwrap_or(SweepParam::WindowN);
                let values = match kv.get("sweep.values") {
                    Some(s) => parse_f64_list(s, "sweep.values")?,
                    None => vec![4.0, 8.0, 16.0, 32.0, 64.0],
                };
                if param == SweepParam::WindowN
                    && values.iter().any(|v| !(*v >= 1.0 && v.fract() == 0.0))
                {
                    return Err(Error::Config("sweep.values for window.N must be positive integers".into()));
                }
                Some(SweepSpec {
                    param,
                    values,
                    reconstruct: parse_bool(kv, "sweep.reconstruct", false)?,
                })
            }
            _ => None,
        };

        let default_quad = QuadratureSpec::default();
        let quadrature = QuadratureSpec {
            radius: parse_one(kv, "quad.radius")?.unwrap_or(default_quad.radius),
            per_unit: parse_one(kv, "quad.per_unit")?.unwrap_or(default_quad.per_unit),
            rule: match kv.get("quad.rule").map(|s| s.trim()) {
                None | Some("simpson") => QuadratureRule::Simpson,
                Some("midpoint") => QuadratureRule::Midpoint,
                Some(other) => return Err(Error::Config(format!("unknown quad.rule '{other}'"))),
            },
        };
        if !(quadrature.radius > 0.0) || quadrature.per_unit == 0 {
            return Err(Error::Config("quad.radius and quad.per_unit must be positive".into()));
        }

        let mut cfg = Self {
            mode,
            dim,
            radii,
            q,
            jitter,
            deltas,
            signal_kind,
            signal_params,
            grid,
            certify: parse_bool(kv, "certify", true)?,
            residuals: parse_bool(kv, "residuals", true)?,
            sweep,
            ppcheck_extent: parse_one(kv, "ppcheck.extent")?.unwrap_or(1000),
            quadrature,
            out_dir: PathBuf::from(kv.get("out").map(String::as_str).unwrap_or("out")),
            echo: BTreeMap::new(),
        };
        cfg.echo = cfg.to_kv();
        // Where the artifacts go does not change what is in them.
        cfg.echo.remove("out");
        Ok(cfg)
    }

    /// The resolved configuration in flat form; `from_kv` of this is `self`.
    pub fn to_kv(&self) -> BTreeMap<String, String> {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",");
        let mut kv = self.jitter.to_kv();
        kv.insert("mode".into(), self.mode.to_string());
        kv.insert("dim".into(), self.dim.to_string());
        kv.insert(
            "window.N".into(),
            self.radii.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
        );
        kv.insert("q".into(), format!("{:?}", self.q));
        if let Some(d) = &self.deltas {
            kv.insert("bound.delta".into(), join(d));
        }
        let kind = serde_json::to_value(self.signal_kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        kv.insert("signal.kind".into(), kind);
        kv.insert("signal.params".into(), join(&self.signal_params));
        kv.insert(
            "grid".into(),
            self.grid
                .iter()
                .map(|g| format!("{:?}:{:?}:{:?}", g.lo, g.hi, g.step))
                .collect::<Vec<_>>()
                .join(" "),
        );
        kv.insert("certify".into(), self.certify.to_string());
        kv.insert("residuals".into(), self.residuals.to_string());
        if let Some(s) = &self.sweep {
            kv.insert("sweep.param".into(), s.param.to_string());
            kv.insert("sweep.values".into(), join(&s.values));
            kv.insert("sweep.reconstruct".into(), s.reconstruct.to_string());
        }
        kv.insert("ppcheck.extent".into(), self.ppcheck_extent.to_string());
        kv.insert("quad.radius".into(), format!("{:?}", self.quadrature.radius));
        kv.insert("quad.per_unit".into(), self.quadrature.per_unit.to_string());
        kv.insert(
            "quad.rule".into(),
            match self.quadrature.rule {
                QuadratureRule::Simpson => "simpson",
                QuadratureRule::Midpoint => "midpoint",
            }
            .into(),
        );
        kv.insert("out".into(), self.out_dir.display().to_string());
        kv
    }

    /// The bank signal, replicated across axes when it is one-dimensional.
    pub fn signal(&self) -> Result<Signal> {
        let s = make_signal(self.signal_kind, &self.signal_params, self.q)?;
        let s = s.replicate(self.dim);
        if s.dim() != self.dim {
            return Err(Error::Config(format!(
                "signal has {} axes, configuration has {}",
                s.dim(),
                self.dim
            )));
        }
        Ok(s)
    }

    pub fn request(&self) -> Result<ReconstructionRequest> {
        let mut req = ReconstructionRequest::new(
            self.signal()?,
            self.radii.clone(),
            self.jitter.clone(),
            Grid::Rect(self.grid.clone()),
        );
        req.q = self.q;
        req.certify = self.certify;
        req.quadrature = self.quadrature;
        Ok(req)
    }
}
