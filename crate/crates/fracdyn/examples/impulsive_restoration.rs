//! Impulses restore the periodicity a fractional derivative destroys.
//!
//! A periodically forced fractional system cannot have an exactly periodic
//! solution — the Caputo memory always drags a decaying transient along.
//! Adding a state jump at the end of every period, sized so that each cycle
//! restarts from the same state, brings the trajectory back to (numerical)
//! periodicity. This example integrates the same forced system with and
//! without impulses and compares cycle residuals. Run with:
//!
//! ```sh
//! cargo run --example impulsive_restoration
//! ```

use fracdyn::grid::TimeGrid;
use fracdyn::impulsive::{solve_impulsive, ImpulseSchedule};
use fracdyn::periodicity::trajectory_periodicity;
use fracdyn::solver::{solve_caputo, SolveOptions};
use fracdyn::systems::build_system;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // dx^0.6/dt^0.6 = cos(2 pi t / T) - 0.5 x, forcing period T = 1
    let period = 1.0;
    let system = build_system("forced_periodic", &[period, 1.0, 0.5], 1)?;
    let orders = [0.6];
    let x0 = [0.0];
    let h = 1e-3;
    let cycles = 5;
    let opts = SolveOptions::default();

    let grid = TimeGrid::from_range(0.0, cycles as f64 * period, h)?;
    let plain = solve_caputo(&system, &orders, &x0, &grid, &opts)?;
    let plain_report = trajectory_periodicity(&plain, period)?;

    let schedule = ImpulseSchedule::equidistant(period, 1)?;
    let impulsive =
        solve_impulsive(&system, &orders, &x0, &schedule, cycles as f64 * period, h, &opts)?;
    let impulsive_report = trajectory_periodicity(&impulsive, period)?;

    println!("cycle residuals r_k = max_t |x(t + T) - x(t)|, T = {period}:");
    println!("{:>6} {:>22} {:>22}", "cycle", "no impulses", "with impulses");
    for (k, (a, b)) in plain_report
        .cycle_residuals
        .iter()
        .zip(&impulsive_report.cycle_residuals)
        .enumerate()
    {
        println!("{:>6} {a:22.6e} {b:22.6e}", k + 1);
    }

    let worst_plain = plain_report.cycle_residuals.iter().cloned().fold(0.0, f64::max);
    let worst_imp = impulsive_report.cycle_residuals.iter().cloned().fold(0.0, f64::max);
    println!("\nworst residual without impulses: {worst_plain:.3e}");
    println!("worst residual with impulses:    {worst_imp:.3e}");
    println!("improvement factor:              {:.1}x", worst_plain / worst_imp);

    println!("\nimpulse sizes applied at the period ends:");
    for j in &impulsive.jumps {
        println!(
            "  t = {:>5.2}: jump = {:+.6e}",
            impulsive.grid.t(j.index),
            j.impulse[0]
        );
    }
    println!("\neach jump re-injects exactly the state the fractional memory leaked,");
    println!("so every period restarts from the same initial condition.");
    Ok(())
}
