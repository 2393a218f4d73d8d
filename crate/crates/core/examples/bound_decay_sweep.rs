//! K_δ against N for a fixed admissible jitter, through the sweep runner.

use wks_bounds::harness::{parse_kv, sweep, ExperimentConfig};
use wks_bounds::numeric::ls_slope;

fn main() -> wks_bounds::Result<()> {
    let kv = parse_kv(
        "mode = sweep\n\
         q = 2\n\
         jitter.kind = alternating\n\
         jitter.M = 0.05\n\
         signal.kind = sinc_power\n\
         signal.params = 2\n\
         grid = -1:1:0.02\n\
         sweep.param = window.N\n\
         sweep.values = 4,8,16,32,64,128\n\
         sweep.reconstruct = true\n",
    )?;
    let rows = sweep(&ExperimentConfig::from_kv(&kv)?)?;
    println!("{:>5} {:>12} {:>12} {:>10}", "N", "K_delta", "sup error", "tightness");
    for r in &rows {
        println!(
            "{:>5} {:>12.6} {:>12.3e} {:>10.2e}",
            r.value,
            r.k_delta,
            r.sup_error.unwrap_or(f64::NAN),
            r.tightness.unwrap_or(f64::NAN)
        );
    }
    let ln_n: Vec<f64> = rows.iter().map(|r| r.value.ln()).collect();
    let ln_k: Vec<f64> = rows.iter().map(|r| r.log_k_delta).collect();
    println!("log-log slope of K_delta: {:.4}", ls_slope(&ln_n, &ln_k));
    Ok(())
}
