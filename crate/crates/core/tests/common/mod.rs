#![allow(dead_code)]

use wks_bounds::signal::Signal;

/// One-dimensional bank signals, all of type π.
pub fn bank() -> Vec<Signal> {
    vec![
        Signal::sinc(),
        Signal::sinc_power(2),
        Signal::sinc_power(3),
        Signal::combo(vec![(1.0, 0.0), (-0.6, 0.5), (0.3, 2.25)]),
    ]
}

/// Bank signals whose integer samples decay fast enough for a tail oracle
/// truncated at `|n| <= 10^5` to reach `1e-8`.
pub fn fast_bank() -> Vec<Signal> {
    vec![
        Signal::sinc(),
        Signal::sinc_power(2),
        Signal::sinc_power(3),
        Signal::combo(vec![(1.0, 0.0), (-0.5, 1.0), (0.25, -3.0)]),
    ]
}

pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (std::f64::consts::PI * t).sin() / (std::f64::consts::PI * t)
    }
}
