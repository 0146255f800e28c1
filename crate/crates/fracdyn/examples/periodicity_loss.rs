//! A fractional derivative of a periodic function is not periodic.
//!
//! The classical derivative of sin t is cos t — periodic forever. The Caputo
//! half-derivative starts out close to cos t but carries a memory of the
//! lower terminal: it deviates from every 2π-periodic signal, with a
//! deviation that decays only algebraically (~t^{-α-1}), never reaching zero
//! at finite time. This example measures that residual directly and prints
//! the deviation envelope. Run with:
//!
//! ```sh
//! cargo run --example periodicity_loss
//! ```

use fracdyn::grid::TimeGrid;
use fracdyn::periodicity::{caputo_sin_deviation, periodicity_residual};
use fracdyn::special::caputo_sin_closed_form;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = 0.5;
    let period = 2.0 * std::f64::consts::PI;

    // sample five periods of the half-derivative of sin and of cos itself
    let grid = TimeGrid::for_period(period, 1024, 5)?;
    let mut half = Vec::with_capacity(grid.len());
    let mut cos = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let t = grid.t(j);
        // t^{1-alpha} E_{2,2-alpha}(-t^2) -> 0 as t -> 0+ for alpha < 1
        half.push(if t > 0.0 { caputo_sin_closed_form(alpha, t)? } else { 0.0 });
        cos.push(t.cos());
    }

    let frac = periodicity_residual(&grid, &[half], period)?;
    let classical = periodicity_residual(&grid, &[cos], period)?;
    println!("cycle-to-cycle residuals r_k = max_t |x(t + T) - x(t)| over cycle k:");
    println!("{:>6} {:>24} {:>24}", "cycle", "caputo half-derivative", "classical cos");
    for (k, (rf, rc)) in frac.cycle_residuals.iter().zip(&classical.cycle_residuals).enumerate() {
        println!("{:>6} {rf:24.3e} {rc:24.3e}", k + 1);
    }
    println!(
        "\nexact-periodicity threshold: {:.1e}; classical exact = {}, fractional exact = {}",
        frac.exact_threshold, classical.exact_periodic, frac.exact_periodic
    );
    println!("the fractional residuals decrease but never cross the threshold:");
    println!("asymptotically periodic = {}\n", frac.asymptotically_periodic);

    // the distance to the periodic wave the derivative approaches,
    // sin(t + απ/2), decays like a power law
    let ts: Vec<f64> = (1..=8).map(|k| 5.0 * k as f64).collect();
    let dev = caputo_sin_deviation(alpha, &ts)?;
    println!("deviation |D^{alpha} sin(t) - sin(t + {alpha}*pi/2)|:");
    for (t, d) in dev.ts.iter().zip(&dev.deviations) {
        println!("  t = {t:5.1}: {d:.6e}");
    }
    println!(
        "fitted decay exponent: {:.3} (memory fades like ~t^-{:.1})",
        dev.decay_exponent(),
        alpha + 1.0
    );
    Ok(())
}
