//! Acceptance criteria, one test each. Every check prints a PASS/FAIL line;
//! run with `--nocapture` to see them.

mod common;

use std::f64::consts::{E, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wks_bounds::bounds::{
    c1, c2, c3, c4, delta_star, k_bound, lambert_w0_real, ln_c1, ln_c2, ln_c3, pp_constant_1d,
    pp_constant_multi, BoundInputs,
};
use wks_bounds::harness::pp_check;
use wks_bounds::kernel::kernel;
use wks_bounds::numeric::{ls_slope, NeumaierSum};
use wks_bounds::reconstruct::{measure_error, truncated_sum, Grid, GridAxis, ReconstructionRequest};
use wks_bounds::sampling_set::{admissible_limit, build_nodes, AdmissibilityMode, JitterKind, JitterSpec};
use wks_bounds::signal::{certified_norm, QuadratureRule, QuadratureSpec, Signal};

struct Checks {
    id: &'static str,
    failed: Vec<String>,
}

impl Checks {
    fn new(id: &'static str) -> Self {
        Self { id, failed: Vec::new() }
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl std::fmt::Display) {
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {detail}", self.id);
        if !pass {
            self.failed.push(name.to_string());
        }
    }

    fn finish(self) {
        assert!(self.failed.is_empty(), "criterion {} failed: {:?}", self.id, self.failed);
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn sinc_oracle(t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    let k = t.round();
    let s = (PI * (t - k)).sin();
    let s = if k.rem_euclid(2.0) == 1.0 { -s } else { s };
    s / (PI * t)
}

#[test]
fn criterion_1_lambert_constants() {
    let mut c = Checks::new("1");
    let z = lambert_w0_real(-2.0 / (E * E)).unwrap() + 2.0;
    c.check("z* = W0(-2/e^2) + 2 ≈ 1.59362", (z - 1.59362).abs() <= 5e-6, format!("{z:.12}"));
    let d = delta_star(1.0).unwrap();
    c.check("delta_star(1) ≈ 1.29174", (d - 1.29174).abs() <= 5e-6, format!("{d:.12}"));
    c.finish();
}

#[test]
fn criterion_2_closed_form_degenerations() {
    let mut c = Checks::new("2");
    let mut worst = [0.0f64; 3];
    for n in 2..=64u32 {
        let nf = f64::from(n);
        worst[0] = worst[0].max((c3(n, 0.0).unwrap() - 1.0).abs());
        for delta in [0.25, 0.5, 1.0, 1.7] {
            worst[1] = worst[1].max((c2(n, 0.0, delta).unwrap() - 0.5).abs() / 0.5);
        }
        for p in [1.5, 2.0, 3.0] {
            let direct = 2.0 * (2.0 * nf).powf(-p) * (1.0 + nf / (p - 1.0));
            worst[2] = worst[2].max(rel(c1(n, 0.0, p).unwrap(), direct));
        }
    }
    c.check("c3(N,0) = 1", worst[0] <= 1e-12, format!("max rel err {:e}", worst[0]));
    c.check("c2(N,0,δ) = 1/2", worst[1] <= 1e-12, format!("max rel err {:e}", worst[1]));
    c.check("c1(N,0,p) = 2(2N)^-p(1+N/(p-1))", worst[2] <= 1e-12, format!("max rel err {:e}", worst[2]));

    let mut worst_pp = 0.0f64;
    for r in [1.0, 1.5, 2.0, 4.0] {
        for delta in [0.3, 0.8, 1.0, 2.5] {
            for sigma in [0.5, 1.0, PI] {
                let one = pp_constant_1d(r, delta, sigma);
                let multi = pp_constant_multi(r, &[delta], &[sigma]).unwrap();
                worst_pp = worst_pp.max(rel(multi, one));
            }
        }
    }
    c.check("pp_constant_multi = pp_constant_1d at d=1", worst_pp <= 1e-14, format!("max rel err {worst_pp:e}"));
    c.finish();
}

#[test]
fn criterion_3_asymptotic_slopes() {
    let mut c = Checks::new("3");
    let ns: Vec<u32> = (8..=20).map(|k| 1u32 << k).collect();
    let ln_n: Vec<f64> = ns.iter().map(|&n| f64::from(n).ln()).collect();
    for m in [0.0, 0.05, 0.1] {
        for p in [2.0, 3.0] {
            let l1: Vec<f64> = ns.iter().map(|&n| ln_c1(n, m, p).unwrap()).collect();
            let l2: Vec<f64> = ns.iter().map(|&n| ln_c2(n, m, 1.0 - 2.0 * m).unwrap()).collect();
            let l3: Vec<f64> = ns.iter().map(|&n| ln_c3(n, m).unwrap()).collect();
            for (name, l, want) in [
                ("C1", &l1, 1.0 + 3.0 * m * p - p),
                ("C2", &l2, 4.0 * m),
                ("C3", &l3, 4.0 * m),
            ] {
                let s = ls_slope(&ln_n, l);
                c.check(
                    &format!("{name} slope M={m} p={p}"),
                    (s - want).abs() <= 0.05,
                    format!("slope {s:.6}, expected {want:.6}"),
                );
            }
        }
    }
    for p in [2.0, 3.0] {
        let vals: Vec<f64> = ns.iter().map(|&n| c4(n, p).unwrap()).collect();
        let diffs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        let shrinking = diffs.windows(2).all(|w| w[1] < w[0]);
        let last = *diffs.last().unwrap();
        c.check(
            &format!("C4 converges p={p}"),
            shrinking && last < 1e-5,
            format!("last difference {last:e}, limit {:.10}", vals.last().unwrap()),
        );
    }
    c.finish();
}

#[test]
fn criterion_4_plancherel_polya_never_violated() {
    let mut c = Checks::new("4");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let quad = QuadratureSpec {
        radius: 4096.0,
        per_unit: 32,
        rule: QuadratureRule::Simpson,
    };
    let kinds = [JitterKind::Constant, JitterKind::Alternating, JitterKind::Uniform];
    let extent = 1000u32;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let d = rng.gen_range(1..=2usize);
        let q = [1.5, 2.0, 4.0][rng.gen_range(0..3)];
        let kind = kinds[rng.gen_range(0..3)];
        let seed = rng.gen::<u64>();
        let limit = admissible_limit(q, d, AdmissibilityMode::Expansion);
        let amplitudes: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..limit)).collect();
        let jitter = JitterSpec::new(kind, amplitudes.clone(), seed);
        let bank = common::bank();
        let signal = Signal::tensor((0..d).map(|_| bank[rng.gen_range(0..bank.len())].clone()).collect());

        let report = pp_check(&signal, &jitter, extent, q, &quad).unwrap();

        // Direct sum over the full box, with 𝔅 at the guaranteed separation.
        let ns = build_nodes(&vec![0.0; d], &vec![extent; d], &jitter).unwrap();
        let mut sum = NeumaierSum::new();
        let t0 = ns.axis(0).window_nodes();
        if d == 1 {
            for &t in t0 {
                sum.add(signal.eval(&[t]).abs().powf(q));
            }
        } else {
            let t1 = ns.axis(1).window_nodes();
            for &a in t0 {
                for &b in t1 {
                    sum.add(signal.eval(&[a, b]).abs().powf(q));
                }
            }
        }
        let pp: f64 = amplitudes
            .iter()
            .map(|m| {
                let delta = 1.0 - 2.0 * m;
                8.0 / (q * PI) * (q * delta * PI / 2.0).exp_m1() / (PI * delta * delta)
            })
            .product();
        let norm = certified_norm(&signal, q, &quad).unwrap();
        let oracle_ratio = sum.value() / (pp * norm.powf(q));
        worst = worst.max(report.ratio).max(oracle_ratio);
        c.check(
            &format!("config {i}: d={d} q={q} {kind} M={amplitudes:?} f={signal}"),
            report.ratio <= 1.0 && oracle_ratio <= 1.0 && rel(report.sampled_sum, sum.value()) < 1e-10,
            format!("ratio {:.6e}, oracle ratio {oracle_ratio:.6e}", report.ratio),
        );
    }
    println!("[4] worst ratio {worst:.6e}");
    c.finish();
}

#[test]
fn criterion_5_truncation_bound_never_violated() {
    let mut c = Checks::new("5");
    let q = 2.0;
    let mut worst = 0.0f64;
    let mut runs = 0;
    for d in [1usize, 2] {
        let half = admissible_limit(q, d, AdmissibilityMode::Convergence) / 2.0;
        let step = if d == 1 { 0.01 } else { 0.05 };
        let grid = Grid::Rect(vec![GridAxis::new(-1.0, 1.0, step).unwrap(); d]);
        for f in common::bank() {
            let signal = f.replicate(d);
            for n in [4u32, 8, 16, 32] {
                for m in [0.0, 0.02, half] {
                    for kind in [JitterKind::Alternating, JitterKind::Uniform] {
                        if m == 0.0 && kind == JitterKind::Uniform {
                            continue;
                        }
                        let jitter = JitterSpec::new(kind, vec![m; d], 11);
                        let req = ReconstructionRequest::new(signal.clone(), vec![n; d], jitter, grid.clone());
                        let r = measure_error(&req).unwrap();
                        let t = r.tightness.unwrap_or(f64::NAN);
                        worst = worst.max(t);
                        runs += 1;
                        c.check(
                            &format!("d={d} N={n} M={m:.4} {kind} f={}", f),
                            r.certified && t <= 1.0,
                            format!(
                                "sup {:.3e} <= K·‖f‖ {:.3e} (tightness {t:.3e})",
                                r.sup_error,
                                r.certified_bound.unwrap_or(f64::NAN)
                            ),
                        );
                    }
                }
            }
        }
    }
    println!("[5] {runs} runs, worst tightness {worst:.6e}");
    c.finish();
}

/// Residuals this small are rounding in a sum of O(1) terms, not truncation
/// error; for `f = sinc` the tail vanishes identically.
const ROUNDING_FLOOR: f64 = 64.0 * f64::EPSILON;

#[test]
fn criterion_6_bound_decay() {
    let mut c = Checks::new("6");
    let (q, m) = (2.0, 0.05);
    assert!(m < 1.0 / ((4.0 * 1.0 - 1.0) * q));
    let ns = [4u32, 8, 16, 32, 64, 128];
    let k: Vec<f64> = ns
        .iter()
        .map(|&n| {
            k_bound(&BoundInputs::with_worst_separation(vec![n], vec![m], q))
                .unwrap()
                .k_delta
        })
        .collect();
    println!("[6] k_delta: {k:?}");
    c.check(
        "k_delta strictly decreasing in N",
        k.windows(2).all(|w| w[1] < w[0]),
        format!("{:.6} -> {:.6}", k[0], k[5]),
    );
    let ratio = k[5] / k[0];
    c.check(
        "k_delta(128) below 10% of k_delta(4)",
        ratio < 0.1,
        format!("ratio {ratio:.6}"),
    );

    let grid = Grid::Rect(vec![GridAxis::new(-1.0, 1.0, 0.01).unwrap()]);
    for f in common::bank() {
        for kind in [JitterKind::Alternating, JitterKind::Uniform] {
            let sup: Vec<f64> = ns
                .iter()
                .map(|&n| {
                    let req = ReconstructionRequest::new(
                        f.clone(),
                        vec![n],
                        JitterSpec::new(kind, vec![m], 5),
                        grid.clone(),
                    );
                    measure_error(&req).unwrap().sup_error
                })
                .collect();
            c.check(
                &format!("sup residual non-increasing, f={f} {kind}"),
                sup.windows(2).all(|w| w[1] <= w[0] + ROUNDING_FLOOR),
                sup.iter().map(|s| format!("{s:.3e}")).collect::<Vec<_>>().join(" "),
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_7_kernel_reductions() {
    let mut c = Checks::new("7");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let none = JitterSpec::none(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(-50.0..50.0);
        let radius = rng.gen_range(1..=20u32);
        let ns = build_nodes(&[x], &[radius], &none).unwrap();
        let n = x.round() as i64 + rng.gen_range(-30..=30i64);
        let got = kernel(n, x, ns.axis(0)).unwrap().value;
        let want = sinc_oracle(x - n as f64);
        worst = worst.max(rel(got, want));
    }
    c.check("zero jitter: ψ(n,x) = sinc(x-n)", worst <= 1e-12, format!("max rel err {worst:e} over 1000 pairs"));

    let mut exact = true;
    for seed in 0..20u64 {
        let jitter = JitterSpec::new(JitterKind::Uniform, vec![0.2], seed);
        let x0: f64 = rng.gen_range(-10.0..10.0);
        let ns = build_nodes(&[x0], &[6], &jitter).unwrap();
        let ax = ns.axis(0);
        for m in ax.lo()..=ax.hi() {
            let t = ax.node(m);
            // The window must be the one seen from t itself.
            let at = build_nodes(&[t], &[6], &jitter).unwrap();
            let ax_t = at.axis(0);
            if !ax_t.contains(m) || ax_t.node(m) != t {
                continue;
            }
            for n in ax_t.lo()..=ax_t.hi() {
                let v = kernel(n, t, ax_t).unwrap().value;
                exact &= v == if n == m { 1.0 } else { 0.0 };
            }
        }
    }
    c.check("interpolation ψ(n, t_m) = δ_nm exactly", exact, "uniform jitter M=0.2, 20 seeds");

    let big = 1_000_000u32;
    let x = 0.37;
    let ns0 = build_nodes(&[x], &[big], &none).unwrap();
    let nsj = build_nodes(&[x], &[big], &JitterSpec::new(JitterKind::Uniform, vec![0.2], 3)).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for n in [0i64, 1, -7, 999_999, -1_000_000, 1_000_001] {
        let k0 = kernel(n, x, ns0.axis(0)).unwrap();
        let kj = kernel(n, x, nsj.axis(0)).unwrap();
        ok &= k0.value.is_finite() && kj.value.is_finite() && kj.log_abs.is_finite();
        ok &= rel(k0.value, sinc_oracle(x - n as f64)) < 1e-9;
        detail = format!("last ψ = {:.6e} (jittered {:.6e})", k0.value, kj.value);
    }
    c.check("N = 10^6 evaluates without overflow", ok, detail);
    c.finish();
}

#[test]
fn criterion_8_zero_jitter_residual_oracle() {
    let mut c = Checks::new("8");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let radius = 16u32;
    let none = JitterSpec::none(1);
    for f in common::fast_bank() {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-20.0..20.0);
            let residual = f.eval(&[x]) - truncated_sum(&f, &[x], &[radius], &none).unwrap();
            let mut tail = NeumaierSum::new();
            for n in -100_000i64..=100_000 {
                if (x - n as f64).abs() > f64::from(radius) {
                    tail.add(f.eval(&[n as f64]) * sinc_oracle(x - n as f64));
                }
            }
            worst = worst.max((residual - tail.value()).abs());
        }
        c.check(
            &format!("residual = tail sum, f={f}"),
            worst <= 1e-8,
            format!("max abs diff {worst:e} over 100 points"),
        );
    }
    c.finish();
}
