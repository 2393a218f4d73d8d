//! W0 on the real line and the separation minimising the PP factor.

use std::f64::consts::E;

use wks_bounds::bounds::{delta_star, lambert_w0_real, pp_profile, z_star};

fn main() -> wks_bounds::Result<()> {
    for y in [-1.0 / E, -0.2, 0.0, 1.0, E, 100.0, 1e8] {
        let w = lambert_w0_real(y)?;
        println!("W0({y:>12.6}) = {w:>12.9}   w e^w - y = {:+.2e}", w * w.exp() - y);
    }
    println!("z* = {:.15}", z_star());
    for q in [1.0, 1.5, 2.0, 4.0] {
        let d = delta_star(q)?;
        println!(
            "q = {q}: delta* = {d:.9}, profile at 0.9 delta*, delta*, 1.1 delta*: {:.6} {:.6} {:.6}",
            pp_profile(q, 0.9 * d),
            pp_profile(q, d),
            pp_profile(q, 1.1 * d)
        );
    }
    Ok(())
}
