use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wks-bounds"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bound_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cli(&["bound", "--out", out, "--set", "window.N=2", "--set", "q=2", "--set", "jitter.M=0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&dir.path().join("bound.json"));
    assert_eq!(v["schema_version"], 1);
    let k = v["result"]["breakdown"]["k_delta"].as_f64().unwrap();
    assert!((k - 1.834).abs() < 1e-3, "{k}");
}

#[test]
fn reconstruct_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "window.N = 8\njitter.kind = uniform\njitter.M = 0.05\nsignal.kind = sinc_power\nsignal.params = 2\n\
         quad.radius = 1024\n",
    )
    .unwrap();
    let mut files = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let o = cli(&[
            "reconstruct",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "42",
            "--grid",
            "-1:1:0.1",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        files.push((
            fs::read(out.join("residuals.csv")).unwrap(),
            fs::read(out.join("summary.json")).unwrap(),
        ));
    }
    assert!(files[0] == files[1], "artifacts differ between identical runs");
    let csv = String::from_utf8(files[0].0.clone()).unwrap();
    assert!(csv.starts_with("x1,f,Y,residual\n"));
    assert_eq!(csv.lines().count(), 22);
    let summary = json(&dir.path().join("a/summary.json"));
    assert_eq!(summary["config"]["jitter.seed"], "42");
    assert!(summary["result"]["tightness"].as_f64().unwrap() <= 1.0);
}

#[test]
fn sweep_and_ppcheck() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cli(&[
        "sweep", "--out", out, "--set", "jitter.M=0.05", "--set", "sweep.param=window.N",
        "--set", "sweep.values=4,8,16,32,64",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let k: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(k.len(), 5);
    assert!(k.windows(2).all(|w| w[1] < w[0]));

    let o = cli(&[
        "ppcheck", "--out", out, "--set", "signal.kind=sinc_power", "--set", "signal.params=1",
        "--set", "jitter.kind=alternating", "--set", "jitter.M=0.1", "--set", "ppcheck.extent=10000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let ratio = json(&dir.path().join("ppcheck.json"))["result"]["ratio"].as_f64().unwrap();
    assert!(ratio > 0.0 && ratio <= 1.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();

    let o = cli(&["bound", "--out", out, "--set", "no.such.key=1"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "config");
    assert_eq!(json(&dir.path().join("error.json"))["exit_code"], 1);

    let o = cli(&["bound", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(o.status.code(), Some(1));

    let o = cli(&["bound", "--out", out, "--set", "jitter.M=0.6"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "invalid_jitter");

    let o = cli(&["bound", "--out", out, "--set", "q=1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = cli(&["bound", "--out", out, "--set", "q=2", "--set", "jitter.M=0.2"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "not_admissible");

    let o = cli(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}
