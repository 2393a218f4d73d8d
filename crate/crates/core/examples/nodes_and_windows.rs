//! Jittered node sets, travelling windows and admissibility limits.

use wks_bounds::sampling_set::{
    admissible_limit, build_nodes, separation, window_index_set, AdmissibilityMode, JitterKind, JitterSpec,
};

fn main() -> wks_bounds::Result<()> {
    let x = [0.3, -1.6];
    let radii = [2, 1];
    println!("window around {x:?} with N = {radii:?}:");
    for n in window_index_set(&x, &radii) {
        println!("  {n:?}");
    }

    for kind in [JitterKind::Constant, JitterKind::Alternating, JitterKind::Uniform] {
        let jitter = JitterSpec::new(kind, vec![0.1, 0.1], 7);
        let ns = build_nodes(&x, &radii, &jitter)?;
        let nodes: Vec<String> = ns.axis(0).window_nodes().iter().map(|t| format!("{t:.4}")).collect();
        println!("{kind:>11}: axis 0 nodes [{}], separation {:?}", nodes.join(", "), separation(&ns));
    }

    for q in [1.0, 1.5, 2.0, 4.0] {
        println!(
            "q = {q}: expansion M < {:.4}, convergence (d = 2) M < {:.4}",
            admissible_limit(q, 1, AdmissibilityMode::Expansion),
            admissible_limit(q, 2, AdmissibilityMode::Convergence),
        );
    }
    Ok(())
}
