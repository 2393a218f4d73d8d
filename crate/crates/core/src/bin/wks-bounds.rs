use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wks_bounds::harness::{self, report, ErrorRecord, ExperimentConfig};
use wks_bounds::Error;

#[derive(Parser)]
#[command(name = "wks-bounds", version, about = "Truncation bounds for jittered sampling series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate K_δ(N, M) and write bound.json.
    Bound(Common),
    /// Measure truncation errors on a grid; write residuals.csv and summary.json.
    Reconstruct(Common),
    /// Vary one parameter; write sweep.csv and summary.json.
    Sweep(Common),
    /// Check the sampled Plancherel–Pólya inequality; write ppcheck.json.
    Ppcheck(Common),
}

#[derive(Args)]
struct Common {
    /// Flat key = value configuration file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Seed for uniform jitter.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Override a configuration key.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Evaluation grid, one per axis.
    #[arg(long, value_name = "LO:HI:STEP", allow_hyphen_values = true)]
    grid: Vec<String>,
}

fn load(mode: &str, c: &Common) -> Result<ExperimentConfig, Error> {
    let mut kv = match &c.config {
        Some(path) => harness::read_kv_file(path)?,
        None => Default::default(),
    };
    for s in &c.set {
        let (k, v) = harness::parse_assignment(s)?;
        kv.insert(k, v);
    }
    kv.insert("mode".into(), mode.into());
    if let Some(seed) = c.seed {
        kv.insert("jitter.seed".into(), seed.to_string());
    }
    if let Some(out) = &c.out {
        kv.insert("out".into(), out.display().to_string());
    }
    if !c.grid.is_empty() {
        kv.insert("grid".into(), c.grid.join(" "));
    }
    ExperimentConfig::from_kv(&kv)
}

fn fail(e: &Error, out: Option<&PathBuf>) -> ExitCode {
    let record = ErrorRecord::from(e);
    let json = serde_json::to_string_pretty(&record).unwrap_or_default();
    eprintln!("{json}");
    if let Some(dir) = out {
        let _ = report::write_file(&dir.join("error.json"), &format!("{json}\n"));
    }
    ExitCode::from(record.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (mode, common) = match &cli.command {
        Command::Bound(c) => ("bound", c),
        Command::Reconstruct(c) => ("reconstruct", c),
        Command::Sweep(c) => ("sweep", c),
        Command::Ppcheck(c) => ("ppcheck", c),
    };
    let cfg = match load(mode, common) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e, common.out.as_ref()),
    };
    match harness::run(&cfg) {
        Ok(outcome) => {
            for path in &outcome.artifacts {
                println!("{}", path.display());
            }
            for v in &outcome.violations {
                eprintln!("violation: {v}");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => fail(&e, Some(&cfg.out_dir)),
    }
}
