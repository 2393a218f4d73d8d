//! The sampled Plancherel–Pólya sum stays below its bound.

use wks_bounds::harness::pp_check;
use wks_bounds::sampling_set::{JitterKind, JitterSpec};
use wks_bounds::signal::{QuadratureSpec, Signal};

fn main() -> wks_bounds::Result<()> {
    let quad = QuadratureSpec::default();
    let cases = [
        (Signal::sinc(), JitterSpec::new(JitterKind::Alternating, vec![0.1], 0), 2.0),
        (Signal::sinc_power(2), JitterSpec::new(JitterKind::Uniform, vec![0.2], 3), 1.5),
        (Signal::sinc_power(3), JitterSpec::new(JitterKind::Constant, vec![0.05], 0), 4.0),
        (
            Signal::tensor(vec![Signal::sinc(), Signal::sinc_power(2)]),
            JitterSpec::new(JitterKind::Uniform, vec![0.1, 0.05], 9),
            2.0,
        ),
    ];
    for (f, jitter, q) in cases {
        let r = pp_check(&f, &jitter, 10_000, q, &quad)?;
        println!(
            "{:<28} q={q:<3} sum {:.6e}  B {:.6e}  norm {:.6}  ratio {:.4}",
            f.description, r.sampled_sum, r.pp_constant, r.norm_upper, r.ratio
        );
    }
    Ok(())
}
