//! Evaluate the two-parameter Mittag-Leffler function E_{α,β}(z).
//!
//! E_{α,β} generalizes the exponential: E_{1,1}(z) = e^z, E_{2,1}(−z²) =
//! cos z, and for fractional α it interpolates between power-law and
//! exponential behaviour. Run with:
//!
//! ```sh
//! cargo run --example mittag_leffler
//! ```

use fracdyn::special::{mittag_leffler, MLParams};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // sanity identities first: the evaluator must reproduce exp and cos
    let e = MLParams::new(1.0, 1.0)?;
    let c = MLParams::new(2.0, 1.0)?;
    for t in [0.5, 2.0, 10.0] {
        let exp = mittag_leffler(e, Complex64::new(t, 0.0))?;
        let cos = mittag_leffler(c, Complex64::new(-t * t, 0.0))?;
        println!(
            "E_1,1({t:5.1}) = {:+.12e}   (e^t   = {:+.12e})",
            exp.re,
            t.exp()
        );
        println!(
            "E_2,1({:+6.1}) = {:+.12e}   (cos t = {:+.12e})",
            -t * t,
            cos.re,
            t.cos()
        );
    }

    // the fractional relaxation law E_α(−t^α) decays algebraically, not
    // exponentially: compare both tails
    println!("\nrelaxation: E_alpha(-t^alpha) for alpha = 0.5 vs classical e^{{-t}}");
    println!("{:>8} {:>22} {:>22}", "t", "alpha = 0.5", "alpha = 1");
    let half = MLParams::new(0.5, 1.0)?;
    for t in [1.0f64, 5.0, 10.0, 50.0, 100.0] {
        let frac = mittag_leffler(half, Complex64::new(-t.sqrt(), 0.0))?;
        println!("{t:8.1} {:22.15e} {:22.15e}", frac.re, (-t).exp());
    }
    println!("\nthe fractional tail ~ 1/(t^alpha * Gamma(1 - alpha)) dominates e^-t for large t");

    // complex arguments work as well
    let z = Complex64::new(1.0, 2.0);
    let v = mittag_leffler(MLParams::new(0.7, 1.3)?, z)?;
    println!("\nE_0.7,1.3(1+2i) = {:+.15e} {:+.15e}i", v.re, v.im);
    Ok(())
}
