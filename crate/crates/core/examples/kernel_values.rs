//! The interpolation kernel: sinc without jitter, Kronecker delta on nodes.

use wks_bounds::kernel::{kernel, sinc};
use wks_bounds::sampling_set::{build_nodes, JitterKind, JitterSpec};

fn main() -> wks_bounds::Result<()> {
    let x = 0.4;
    let plain = build_nodes(&[x], &[4], &JitterSpec::none(1))?;
    let jittered = build_nodes(&[x], &[4], &JitterSpec::new(JitterKind::Alternating, vec![0.15], 0))?;
    println!("{:>4} {:>14} {:>14} {:>14}", "n", "sinc(x-n)", "psi (M=0)", "psi (M=0.15)");
    for n in -6..=6 {
        let a = kernel(n, x, plain.axis(0))?.value;
        let b = kernel(n, x, jittered.axis(0))?.value;
        println!("{n:>4} {:>14.8} {a:>14.8} {b:>14.8}", sinc(x - n as f64));
    }

    let ax = jittered.axis(0);
    let t = ax.node(1);
    let at_node = build_nodes(&[t], &[4], jittered.jitter())?;
    let row: Vec<f64> = (-2..=3).map(|n| kernel(n, t, at_node.axis(0)).map(|k| k.value)).collect::<Result<_, _>>()?;
    println!("psi(n, t_1) for n = -2..3: {row:?}");

    let far = build_nodes(&[0.37], &[1_000_000], &JitterSpec::new(JitterKind::Uniform, vec![0.2], 1))?;
    let k = kernel(3, 0.37, far.axis(0))?;
    println!("N = 10^6: psi = {:.6e} (log|psi| = {:.6})", k.value, k.log_abs);
    Ok(())
}
