//! Convergence of the fractional Adams-Bashforth-Moulton solver.
//!
//! D^α x = −x with x(0) = 1 has the exact solution x(t) = E_α(−t^α). This
//! example integrates it over a ladder of halved steps and prints the
//! sup-norm errors against that closed form, together with the fitted
//! convergence order. Run with:
//!
//! ```sh
//! cargo run --example solver_convergence
//! ```

use fracdyn::solver::{convergence_study, SolveOptions};
use fracdyn::special::{mittag_leffler, MLParams};
use fracdyn::systems::build_system;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = 0.7;
    let system = build_system("linear", &[-1.0, 0.0], 1)?;
    let x0 = [1.0];
    let t_end = 2.0;
    let p = MLParams::new(alpha, 1.0)?;

    println!("D^{alpha} x = -x, x(0) = 1; exact x(t) = E_{alpha}(-t^{alpha})\n");
    let hs: Vec<f64> = (0..5).map(|k| 0.02 / (1 << k) as f64).collect();
    let exact = move |t: f64| {
        let v = mittag_leffler(p, Complex64::new(-t.powf(alpha), 0.0))
            .expect("Mittag-Leffler evaluation in the tested range");
        vec![v.re]
    };
    let study = convergence_study(
        &system,
        &[alpha],
        &x0,
        t_end,
        &hs,
        exact,
        &SolveOptions::default(),
    )?;

    println!("{:>10} {:>16} {:>8}", "h", "sup error", "ratio");
    for (k, (h, e)) in study.hs.iter().zip(&study.sup_errors).enumerate() {
        if k == 0 {
            println!("{h:10.5} {e:16.6e} {:>8}", "-");
        } else {
            println!("{h:10.5} {e:16.6e} {:8.2}", study.sup_errors[k - 1] / e);
        }
    }
    println!("\nfitted order: error ~ C h^{:.2}", study.observed_order);
    println!("(the predictor-corrector scheme is O(h^(1+alpha)) for smooth right-hand sides)");
    Ok(())
}
