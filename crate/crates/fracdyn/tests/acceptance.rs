//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test prints a single summary line
//! `[acceptance] criterion N (<name>): PASS|FAIL` before asserting, so a
//! `cargo test --test acceptance -- --nocapture` run yields a compact
//! scoreboard. Criterion 4 is expected to fail: the identity it checks is
//! stated over a window that includes the first grid point, where the
//! truncated Grünwald-Letnikov sum has an O(h^{-α}) startup error that
//! *grows* as h shrinks. The test implements the stated check faithfully
//! and documents the measured values rather than hiding the discrepancy.

use fracdyn::grid::{SampledFunction, TimeGrid};
use fracdyn::impulsive::{solve_impulsive, ImpulseSchedule};
use fracdyn::mellin::{
    g_kernel_mellin_closed, kernel_mellin_numeric, proof_witness, StripWindow,
};
use fracdyn::operators::{caputo_derivative, gl_derivative, rl_derivative, FractionalOrder};
use fracdyn::periodicity::{
    caputo_sin_deviation, estimate_period, periodicity_residual, trajectory_periodicity,
};
use fracdyn::solver::{solve_caputo, SolveOptions};
use fracdyn::special::{caputo_sin_closed_form, recip_gamma_real};
use fracdyn::systems::build_system;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

fn report(n: usize, name: &str, pass: bool) {
    println!("[acceptance] criterion {n} ({name}): {}", if pass { "PASS" } else { "FAIL" });
}

fn sin_sampled(grid: TimeGrid, derivs: usize) -> SampledFunction {
    SampledFunction::from_fn_with_derivs(grid, f64::sin, derivs, |k, t| {
        (t + k as f64 * FRAC_PI_2).sin()
    })
}

#[test]
fn criterion_1_caputo_sin_matches_closed_form() {
    let alpha = 0.5;
    let order = FractionalOrder::new(alpha).unwrap();
    let h = 1e-3;
    let grid = TimeGrid::from_range(0.0, 10.0, h).unwrap();
    let g = sin_sampled(grid.clone(), order.n());
    let caputo = caputo_derivative(&g, &order).unwrap();

    let mut worst = 0.0f64;
    for j in 0..grid.len() {
        let t = grid.t(j);
        if t < 0.1 {
            continue;
        }
        let exact = caputo_sin_closed_form(alpha, t).unwrap();
        worst = worst.max((caputo.values[j] - exact).abs());
    }
    let pass = worst <= 1e-3;
    println!("  max |numeric - closed form| over [0.1, 10] = {worst:.3e} (bound 1e-3)");
    report(1, "caputo sin closed-form cross-validation", pass);
    assert!(pass, "max abs error {worst:.3e} exceeds 1e-3");
}

#[test]
fn criterion_2_half_derivative_breaks_periodicity_where_cos_keeps_it() {
    let period = 2.0 * PI;
    let grid = TimeGrid::for_period(period, 1024, 5).unwrap();
    let mut half = Vec::with_capacity(grid.len());
    let mut cos = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let t = grid.t(j);
        half.push(if t > 0.0 { caputo_sin_closed_form(0.5, t).unwrap() } else { 0.0 });
        cos.push(t.cos());
    }
    let frac = periodicity_residual(&grid, &[half], period).unwrap();
    let classical = periodicity_residual(&grid, &[cos], period).unwrap();
    let r0_frac = frac.cycle_residuals[0];
    let r0_classical = classical.cycle_residuals[0];

    let pass = r0_frac > 0.01 && r0_classical <= 1e-9;
    println!("  r_0 of D^0.5 sin = {r0_frac:.3e} (must exceed 1e-2)");
    println!("  r_0 of cos       = {r0_classical:.3e} (must be <= 1e-9)");
    report(2, "fractional derivative of sin is not 2pi-periodic", pass);
    assert!(pass);
}

#[test]
fn criterion_3_deviation_from_limit_wave_decays() {
    let dev = caputo_sin_deviation(0.5, &[5.0, 50.0]).unwrap();
    let (d5, d50) = (dev.deviations[0], dev.deviations[1]);
    let pass = d50 <= d5 / 10.0;
    println!("  deviation(t=5) = {d5:.3e}, deviation(t=50) = {d50:.3e}, ratio {:.1}", d5 / d50);
    report(3, "asymptotic approach to sin(t + pi/4)", pass);
    assert!(pass, "deviation at t=50 ({d50:.3e}) is not <= 1/10 of t=5 ({d5:.3e})");
}

/// Max |GL - (Caputo + initial-value correction)| over t in [h, 5].
fn definition_gap(function: &str, alpha: f64, h: f64) -> f64 {
    let order = FractionalOrder::new(alpha).unwrap();
    let n = order.n();
    let grid = TimeGrid::from_range(0.0, 5.0, h).unwrap();
    let g = match function {
        "sin" => sin_sampled(grid.clone(), n),
        "square" => SampledFunction::from_fn_with_derivs(grid.clone(), |t| t * t, n, |k, t| {
            match k {
                1 => 2.0 * t,
                2 => 2.0,
                _ => 0.0,
            }
        }),
        "exp-decay" => {
            SampledFunction::from_fn_with_derivs(grid.clone(), |t| (-t).exp(), n, |k, t| {
                if k % 2 == 0 {
                    (-t).exp()
                } else {
                    -(-t).exp()
                }
            })
        }
        other => panic!("unknown test function {other}"),
    };
    let gl = gl_derivative(&g, &order).unwrap();
    let caputo = caputo_derivative(&g, &order).unwrap();
    let init = g.initial_derivatives(n).unwrap();

    let mut worst = 0.0f64;
    for j in 1..grid.len() {
        let t = grid.t(j);
        // correction sum_{k<n} g^{(k)}(0) t^{k-alpha} / Gamma(k - alpha + 1)
        let mut corr = 0.0;
        for (k, g0) in init.iter().enumerate() {
            corr += g0 * t.powf(k as f64 - alpha) * recip_gamma_real(k as f64 - alpha + 1.0);
        }
        worst = worst.max((gl.values[j] - (caputo.values[j] + corr)).abs());
    }
    worst
}

#[test]
fn criterion_4_definition_identity_on_the_stated_window() {
    let h = 1e-3;
    let mut pass = true;
    println!("  max |GL - (Caputo + correction)| over [h, 5], h = 1e-3, then h/2:");
    for function in ["sin", "square", "exp-decay"] {
        for alpha in [0.5, 1.5] {
            let gap = definition_gap(function, alpha, h);
            let gap_half = definition_gap(function, alpha, h / 2.0);
            let bounded = gap <= 1e-2;
            let shrinks = gap / gap_half >= 1.8;
            pass &= bounded && shrinks;
            println!(
                "    {function:>9}, alpha = {alpha}: gap = {gap:.3e} (<= 1e-2: {bounded}), \
                 gap at h/2 = {gap_half:.3e}, shrink factor {:.2} (>= 1.8: {shrinks})",
                gap / gap_half
            );
        }
    }
    report(4, "three-definition identity including the first grid step", pass);
    assert!(
        pass,
        "the identity check over [h, 5] fails: the window includes t = h, where the \
         truncated GL sum and the t^{{-alpha}} correction term disagree by an amount \
         that grows as h shrinks; see the per-combination lines above"
    );
}

#[test]
fn criterion_5_rl_derivative_is_unbounded_at_origin_when_g0_nonzero() {
    let alpha = 0.5;
    let order = FractionalOrder::new(alpha).unwrap();
    let mut magnitudes = Vec::new();
    for k in 0..3 {
        let h = 1e-3 / (1 << k) as f64;
        let grid = TimeGrid::from_range(0.0, 1.0, h).unwrap();
        let g = SampledFunction::from_fn_with_derivs(grid, f64::cos, order.n(), |k, t| {
            (t + k as f64 * FRAC_PI_2).cos()
        });
        let rl = rl_derivative(&g, &order).unwrap();
        assert!(rl.singular_at_origin, "cos(0) = 1 must flag the origin singularity");
        magnitudes.push(rl.samples.values[0].abs());
    }
    let pass = magnitudes[0] < magnitudes[1] && magnitudes[1] < magnitudes[2];
    println!(
        "  |RL cos| at t = h for h = 1e-3, 5e-4, 2.5e-4: {:.4e}, {:.4e}, {:.4e}",
        magnitudes[0], magnitudes[1], magnitudes[2]
    );
    println!(
        "  growth ratios {:.3}, {:.3} (h^-0.5 predicts {:.3})",
        magnitudes[1] / magnitudes[0],
        magnitudes[2] / magnitudes[1],
        2.0f64.powf(alpha)
    );
    report(5, "Riemann-Liouville startup singularity scales like h^-alpha", pass);
    assert!(pass);
}

#[test]
fn criterion_6_mellin_kernel_accuracy_and_witness_thresholds() {
    let alpha = 0.5;
    // 20 points of the kernel's fundamental strip 0 < Re z < 0.5
    let mut worst = 0.0f64;
    for re in [0.08, 0.16, 0.24, 0.32, 0.40] {
        for im in [-3.0, -1.0, 0.5, 2.0] {
            let z = Complex64::new(re, im);
            let exact = g_kernel_mellin_closed(alpha, z).unwrap();
            let quad = kernel_mellin_numeric(alpha, z).unwrap();
            worst = worst.max((quad - exact).norm() / exact.norm());
        }
    }
    let kernel_ok = worst <= 1e-4;
    println!("  worst kernel-transform relative error over 20 strip points: {worst:.3e}");

    let strip = StripWindow::obstruction_default(alpha).unwrap();
    let grid = TimeGrid::for_period(2.0 * PI, 4096, 1).unwrap();
    let sin_report = proof_witness(&sin_sampled(grid.clone(), 1), alpha, &strip).unwrap();
    let one = SampledFunction::from_fn_with_derivs(grid, |_| 1.0, 1, |_, _| 0.0);
    let const_report = proof_witness(&one, alpha, &strip).unwrap();
    let witness_ok = sin_report.min_abs_h >= 0.01 && const_report.min_abs_h <= 1e-10;
    println!(
        "  min |H| for sin = {:.4e} (>= 0.01), for constant = {:.3e} (<= 1e-10)",
        sin_report.min_abs_h, const_report.min_abs_h
    );

    let pass = kernel_ok && witness_ok;
    report(6, "Mellin kernel transform and obstruction witness", pass);
    assert!(pass);
}

#[test]
fn criterion_7_impulses_restore_periodicity() {
    let period = 1.0;
    let system = build_system("forced_periodic", &[period, 1.0, 0.5], 1).unwrap();
    let orders = [0.6];
    let x0 = [0.0];
    let h = 1e-3;
    let t_end = 5.0 * period;
    let opts = SolveOptions::default();

    let grid = TimeGrid::from_range(0.0, t_end, h).unwrap();
    let plain = solve_caputo(&system, &orders, &x0, &grid, &opts).unwrap();
    let plain_worst = trajectory_periodicity(&plain, period)
        .unwrap()
        .cycle_residuals
        .into_iter()
        .fold(0.0, f64::max);

    let schedule = ImpulseSchedule::equidistant(period, 1).unwrap();
    let pulsed = solve_impulsive(&system, &orders, &x0, &schedule, t_end, h, &opts).unwrap();
    let pulsed_worst = trajectory_periodicity(&pulsed, period)
        .unwrap()
        .cycle_residuals
        .into_iter()
        .fold(0.0, f64::max);

    let pass = pulsed_worst <= 5e-3 && pulsed_worst * 10.0 <= plain_worst;
    println!("  worst cycle residual without impulses: {plain_worst:.3e}");
    println!("  worst cycle residual with impulses:    {pulsed_worst:.3e} (bound 5e-3)");
    println!("  improvement factor: {:.1} (must be >= 10)", plain_worst / pulsed_worst);
    report(7, "computed impulses restore periodic cycling", pass);
    assert!(pass);
}

#[test]
fn criterion_8_two_neuron_network_settles_toward_inexact_cycle() {
    let system = build_system("nn2", &[], 2).unwrap();
    let h = 0.01;
    let grid = TimeGrid::from_range(0.0, 200.0, h).unwrap();
    let traj =
        solve_caputo(&system, &[0.5, 0.5], &[0.1, 0.1], &grid, &SolveOptions::default()).unwrap();

    let bounded = traj.sup_norm() < 10.0;
    println!("  sup |x| over the run = {:.3} (bounded)", traj.sup_norm());

    // successive period estimates from two disjoint late windows
    let x1 = traj.component(0);
    let a = estimate_period(&x1[10_000..15_000], h).unwrap();
    let b = estimate_period(&x1[15_000..], h).unwrap();
    let drift = (a.period - b.period).abs() / b.period;
    let stable = drift <= 0.01;
    println!(
        "  period estimates: t in [100,150] -> {:.4}, t in [150,200] -> {:.4} (drift {:.2e})",
        a.period, b.period, drift
    );

    let period = (b.period / h).round() * h;
    let rep = trajectory_periodicity(&traj, period).unwrap();
    let rs = &rep.cycle_residuals;
    let after_transient = &rs[2..];
    let monotone = after_transient.windows(2).all(|w| w[1] < w[0]);
    let above_floor = after_transient.iter().all(|r| *r > rep.exact_threshold);
    println!("  cycle residuals: {:?}", rs.iter().map(|r| format!("{r:.2e}")).collect::<Vec<_>>());
    println!(
        "  after transient: monotone decreasing = {monotone}, all above exactness \
         threshold {:.1e} = {above_floor}",
        rep.exact_threshold
    );

    let pass = bounded && stable && monotone && above_floor;
    report(8, "fractional two-neuron run approaches but never attains a cycle", pass);
    assert!(pass);
}

#[test]
fn criterion_9_classical_derivatives_of_trig_polynomials_stay_periodic() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(0x5eed_f00d);
    let mut pass = true;
    for case in 0..20 {
        let period: f64 = rng.gen_range(1.0..10.0);
        let harmonics = rng.gen_range(1..=4);
        let omega = 2.0 * PI / period;
        let mut coeffs = Vec::new();
        for _ in 0..harmonics {
            coeffs.push((rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        }
        // guarantee non-constancy: pin the fundamental's sine coefficient
        coeffs[0].1 = rng.gen_range(0.5..2.0);
        let a0: f64 = rng.gen_range(-1.0..1.0);

        let grid = TimeGrid::for_period(period, 256, 3).unwrap();
        let samples: Vec<f64> = (0..grid.len())
            .map(|j| {
                let t = grid.t(j);
                let mut acc = a0;
                for (m, (ca, cb)) in coeffs.iter().enumerate() {
                    let w = omega * (m + 1) as f64;
                    acc += ca * (w * t).cos() + cb * (w * t).sin();
                }
                acc
            })
            .collect();
        let m = grid.steps_spanning(period).unwrap();

        // differentiate numerically up to order 3; interior finite differences
        // of an exactly periodic sample sequence must stay periodic
        let mut d = samples;
        for k in 1..=3usize {
            d = fracdyn::grid::finite_difference(&d, grid.h()).unwrap();
            let lo = k; // end stencils contaminate k points at each end
            let hi = d.len() - k - m;
            let mut residual = 0.0f64;
            let mut dmin = f64::INFINITY;
            let mut dmax = f64::NEG_INFINITY;
            for j in lo..hi {
                residual = residual.max((d[j + m] - d[j]).abs());
                dmin = dmin.min(d[j]);
                dmax = dmax.max(d[j]);
            }
            let amp = 0.5 * (dmax - dmin);
            let periodic = residual <= 1e-6 * amp.max(1e-12);
            let nonconstant = amp > 1e-2;
            if !(periodic && nonconstant) {
                println!(
                    "    case {case}, derivative order {k}: residual {residual:.2e}, \
                     amplitude {amp:.2e} -> periodic {periodic}, nonconstant {nonconstant}"
                );
                pass = false;
            }
        }
    }
    report(9, "integer derivatives preserve periodicity and non-constancy", pass);
    assert!(pass);
}
