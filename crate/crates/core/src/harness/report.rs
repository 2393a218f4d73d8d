//! Report files. JSON documents share a versioned envelope; CSV floats are
//! written with 17 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reconstruct::ErrorReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Common wrapper of every JSON artifact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub mode: String,
    pub config: BTreeMap<String, String>,
    pub result: T,
}

impl<T> Envelope<T> {
    pub fn new(mode: impl Into<String>, config: BTreeMap<String, String>, result: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            mode: mode.into(),
            config,
            result,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// `{:.16e}`: 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(path, &text)
}

/// Columns `x1..xd,f,Y,residual`, one row per grid point.
pub fn residuals_csv(report: &ErrorReport, dim: usize) -> String {
    let mut out = String::new();
    for j in 1..=dim {
        let _ = write!(out, "x{j},");
    }
    out.push_str("f,Y,residual\n");
    for p in &report.points {
        for &x in &p.x {
            out.push_str(&fmt_f64(x));
            out.push(',');
        }
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_f64(p.f),
            fmt_f64(p.y),
            fmt_f64(p.residual)
        );
    }
    out
}

/// Write an error report as residual CSV or as the JSON summary.
pub fn emit_report(
    report: &ErrorReport,
    format: ReportFormat,
    path: &Path,
    dim: usize,
    config: &BTreeMap<String, String>,
) -> Result<PathBuf> {
    match format {
        ReportFormat::Csv => write_file(path, &residuals_csv(report, dim))?,
        ReportFormat::Json => write_json(path, &Envelope::new("reconstruct", config.clone(), report))?,
    }
    Ok(path.to_path_buf())
}

/// Machine-readable failure record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub schema_version: u32,
    pub error: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            error: e.kind().to_string(),
            message: e.to_string(),
            exit_code: e.exit_code(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruct::PointResidual;

    fn report(points: Vec<PointResidual>) -> ErrorReport {
        ErrorReport {
            sup_error: 0.25,
            argmax: Some(vec![0.5]),
            grid_points: points.len(),
            certified: true,
            uncertified_reason: None,
            k_delta: Some(1.5),
            norm_upper: Some(1.0),
            certified_bound: Some(1.5),
            tightness: Some(0.25 / 1.5),
            bound: None,
            points,
        }
    }

    #[test]
    fn empty_grid_is_header_only() {
        assert_eq!(residuals_csv(&report(vec![]), 2), "x1,x2,f,Y,residual\n");
    }

    #[test]
    fn single_point_single_row() {
        let r = report(vec![PointResidual {
            x: vec![0.1],
            f: 1.0 / 3.0,
            y: 0.3,
            residual: 1.0 / 3.0 - 0.3,
        }]);
        let csv = residuals_csv(&r, 1);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        let f: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(f, 1.0 / 3.0);
    }

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("summary.json");
        let r = report(vec![]);
        let cfg: BTreeMap<String, String> = [("q".to_string(), "2.0".to_string())].into();
        emit_report(&r, ReportFormat::Json, &path, 1, &cfg).unwrap();
        let back: Envelope<ErrorReport> =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back.schema_version, SCHEMA_VERSION);
        assert_eq!(back.result, r);
        assert_eq!(back.config, cfg);
    }

    #[test]
    fn io_errors_carry_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let err = write_file(&blocker.join("sub/out.csv"), "").unwrap_err();
        assert!(err.to_string().contains("file"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }
}
