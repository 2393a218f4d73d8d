//! Bank signals and their L^q norms by quadrature with certified tails.

use wks_bounds::signal::{lq_norm, make_signal, QuadratureRule, QuadratureSpec, SignalKind};

fn main() -> wks_bounds::Result<()> {
    let spec = QuadratureSpec {
        radius: 4096.0,
        per_unit: 32,
        rule: QuadratureRule::Simpson,
    };
    let bank = [
        (SignalKind::SincPower, vec![1.0]),
        (SignalKind::SincPower, vec![2.0]),
        (SignalKind::SincPower, vec![3.0, 3.0, 0.5, 2.0]),
        (SignalKind::ShiftedSincCombo, vec![1.0, 0.0, -0.5, 1.0, 0.25, 2.5]),
        (SignalKind::TensorProduct, vec![1.0, 2.0]),
    ];
    for (kind, params) in bank {
        for q in [1.5, 2.0, 4.0] {
            let f = make_signal(kind, &params, q)?;
            let e = lq_norm(&f, q, &spec)?;
            let exact = f.declared_norm(q).map(|v| format!("{v:.10}")).unwrap_or_else(|| "-".into());
            println!(
                "{:<48} q={q:<3} norm {:.10}  upper {:.10}  tail {:.2e}  exact {exact}",
                f.description, e.value, e.upper, e.tail_bound
            );
        }
    }
    if let Err(e) = make_signal(SignalKind::SincPower, &[2.0, 1.0], 2.0) {
        println!("sinc^2 at unit scale: {e}");
    }
    Ok(())
}
