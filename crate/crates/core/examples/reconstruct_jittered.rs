//! Reconstruction from jittered samples, with the measured error against
//! the certified bound.

use wks_bounds::reconstruct::{measure_error, truncated_sum, Grid, GridAxis, ReconstructionRequest};
use wks_bounds::sampling_set::{JitterKind, JitterSpec};
use wks_bounds::signal::Signal;

fn main() -> wks_bounds::Result<()> {
    let f = Signal::sinc_power(2);
    let jitter = JitterSpec::new(JitterKind::Uniform, vec![0.05], 2024);
    for x in [0.0, 0.25, 0.5, 1.3] {
        let y = truncated_sum(&f, &[x], &[16], &jitter)?;
        println!("x = {x:<5} f = {:+.12}  Y = {y:+.12}", f.eval(&[x]));
    }

    let grid = Grid::Rect(vec![GridAxis::new(-1.0, 1.0, 0.01)?]);
    for n in [4, 8, 16, 32] {
        let report = measure_error(&ReconstructionRequest::new(f.clone(), vec![n], jitter.clone(), grid.clone()))?;
        println!(
            "N = {n:>2}: sup error {:.3e} at {:?}, bound {:.3e}, tightness {:.2e}",
            report.sup_error,
            report.argmax.unwrap_or_default(),
            report.certified_bound.unwrap_or(f64::NAN),
            report.tightness.unwrap_or(f64::NAN)
        );
    }

    let f2 = Signal::tensor(vec![Signal::sinc_power(2), Signal::sinc()]);
    let jitter2 = JitterSpec::new(JitterKind::Alternating, vec![0.03, 0.03], 0);
    let grid2 = Grid::Rect(vec![GridAxis::new(-1.0, 1.0, 0.1)?; 2]);
    let report = measure_error(&ReconstructionRequest::new(f2, vec![8, 8], jitter2, grid2))?;
    println!(
        "d = 2, N = 8: sup error {:.3e}, bound {:.3e}",
        report.sup_error,
        report.certified_bound.unwrap_or(f64::NAN)
    );
    Ok(())
}
