//! Product-trapezoid quadrature for weakly singular convolutions
//! ∫₀^{t_n} (t_n − s)^{μ−1} φ(s) ds on a uniform grid, μ > 0.
//!
//! The integrand's kernel is integrated exactly against a piecewise-linear
//! interpolant of φ, which gives O(h²) accuracy for smooth φ and *exact*
//! results for constant and affine φ — the singularity at s = t_n never
//! meets a quadrature node. The resulting weights are the classical
//! product-trapezoid (predictor-corrector) set:
//!
//! ```text
//! I_n ≈ h^μ/(μ(μ+1)) · [ a₀(n)·φ₀ + Σ_{0<j<n} b_{n−j}·φ_j + 1·φ_n ]
//! a₀(n)  = (n−1)^{μ+1} − n^μ(n − μ − 1)
//! b_m    = (m+1)^{μ+1} − 2m^{μ+1} + (m−1)^{μ+1}
//! ```
//!
//! No 1/Γ(μ) here: callers implementing fractional integrals divide by the
//! gamma factor themselves.

use crate::error::{Error, Result};

/// Precomputed power tables m^{μ+1} and m^μ shared by the convolution
/// weights; one powf per index instead of one per (step, index) pair.
#[derive(Debug, Clone)]
pub struct PowerTables {
    mu: f64,
    /// p[m] = m^{μ+1}
    p: Vec<f64>,
    /// q[m] = m^μ
    q: Vec<f64>,
}

impl PowerTables {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("convolution exponent must be positive, got {mu}")));
        }
        Ok(PowerTables { mu, p: vec![0.0], q: vec![0.0] })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Extend the tables so indices up to `n` (inclusive) are valid.
    pub fn ensure(&mut self, n: usize) {
        while self.p.len() <= n + 1 {
            let m = self.p.len() as f64;
            self.p.push(m.powf(self.mu + 1.0));
            self.q.push(m.powf(self.mu));
        }
    }

    /// Interior weight b_m (m ≥ 1); multiplies φ at distance m·h from t_n.
    #[inline]
    pub fn b(&self, m: usize) -> f64 {
        debug_assert!(m >= 1 && m + 1 < self.p.len());
        self.p[m + 1] - 2.0 * self.p[m] + self.p[m - 1]
    }

    /// Left-endpoint weight a₀(n) for the integral reaching t_n (n ≥ 1).
    #[inline]
    pub fn a0(&self, n: usize) -> f64 {
        debug_assert!(n >= 1 && n < self.p.len());
        let nf = n as f64;
        self.p[n - 1] - self.q[n] * (nf - self.mu - 1.0)
    }

    /// Rectangle-rule weight m^μ − (m−1)^μ (m ≥ 1): the kernel integrated
    /// over one cell against piecewise-constant φ. Used by predictors.
    #[inline]
    pub fn rect(&self, m: usize) -> f64 {
        debug_assert!(m >= 1 && m < self.q.len());
        self.q[m] - self.q[m - 1]
    }

    /// h^μ / (μ(μ+1)), the prefactor of the piecewise-linear weights.
    pub fn prefactor(&self, h: f64) -> f64 {
        h.powf(self.mu) / (self.mu * (self.mu + 1.0))
    }

    /// h^μ / μ, the prefactor of the rectangle weights.
    pub fn prefactor_rect(&self, h: f64) -> f64 {
        h.powf(self.mu) / self.mu
    }

    /// ∫ over [0, (len−1)h] of (t_end − s)^{μ−1} φ(s) ds, φ piecewise linear
    /// through `values`. O(len).
    pub fn integral_at_end(&mut self, h: f64, values: &[f64]) -> Result<f64> {
        let n = values.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
            Error::InsufficientSamples(format!(
                "singular-kernel integral needs at least 2 samples, got {}",
                values.len()
            ))
        })?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain(format!("step must be positive, got {h}")));
        }
        self.ensure(n);
        let mut acc = self.a0(n) * values[0] + values[n];
        for j in 1..n {
            acc += self.b(n - j) * values[j];
        }
        Ok(self.prefactor(h) * acc)
    }

    /// The integral at every grid point: out[n] = ∫₀^{nh} (nh − s)^{μ−1} φ ds,
    /// out[0] = 0. O(len²).
    pub fn sweep(&mut self, h: f64, values: &[f64]) -> Result<Vec<f64>> {
        if values.len() < 2 {
            return Err(Error::InsufficientSamples(format!(
                "singular-kernel sweep needs at least 2 samples, got {}",
                values.len()
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain(format!("step must be positive, got {h}")));
        }
        let last = values.len() - 1;
        self.ensure(last);
        let pf = self.prefactor(h);
        let mut out = Vec::with_capacity(values.len());
        out.push(0.0);
        for n in 1..=last {
            let mut acc = self.a0(n) * values[0] + values[n];
            for j in 1..n {
                acc += self.b(n - j) * values[j];
            }
            out.push(pf * acc);
        }
        Ok(out)
    }
}

/// One-call form of [`PowerTables::sweep`].
pub fn fractional_convolution_sweep(mu: f64, h: f64, values: &[f64]) -> Result<Vec<f64>> {
    PowerTables::new(mu)?.sweep(h, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(h: f64, n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=n).map(|j| f(j as f64 * h)).collect()
    }

    #[test]
    fn exact_for_constant_and_affine_integrands() {
        // ∫₀^t (t−s)^{μ−1} c ds = c t^μ/μ and ∫₀^t (t−s)^{μ−1} s ds = t^{μ+1}/(μ(μ+1))
        for &mu in &[0.25, 0.5, 0.9, 1.0, 1.3, 1.7] {
            let h = 0.037;
            let vals_c = sample(h, 57, |_| 2.5);
            let vals_s = sample(h, 57, |s| s);
            let sweep_c = fractional_convolution_sweep(mu, h, &vals_c).unwrap();
            let sweep_s = fractional_convolution_sweep(mu, h, &vals_s).unwrap();
            for n in 1..=57usize {
                let t = n as f64 * h;
                let want_c = 2.5 * t.powf(mu) / mu;
                let want_s = t.powf(mu + 1.0) / (mu * (mu + 1.0));
                assert!(
                    (sweep_c[n] - want_c).abs() <= 1e-12 * want_c.abs().max(1.0),
                    "constant, mu = {mu}, n = {n}: {} vs {want_c}",
                    sweep_c[n]
                );
                assert!(
                    (sweep_s[n] - want_s).abs() <= 1e-12 * want_s.abs().max(1.0),
                    "affine, mu = {mu}, n = {n}: {} vs {want_s}",
                    sweep_s[n]
                );
            }
        }
    }

    #[test]
    fn second_order_for_smooth_integrands() {
        // ∫₀^t (t−s)^{μ−1} s² ds = 2 t^{μ+2}/(μ(μ+1)(μ+2)); halving h must
        // cut the error by ~4
        let mu = 0.6;
        let t_end: f64 = 2.0;
        let exact = 2.0 * t_end.powf(mu + 2.0) / (mu * (mu + 1.0) * (mu + 2.0));
        let err = |n: usize| {
            let h = t_end / n as f64;
            let vals = sample(h, n, |s| s * s);
            (fractional_convolution_sweep(mu, h, &vals).unwrap()[n] - exact).abs()
        };
        let (e1, e2) = (err(200), err(400));
        let ratio = e1 / e2;
        assert!(
            (3.5..=4.5).contains(&ratio),
            "expected ~4x error reduction on halving h, got {ratio:.2} ({e1:.3e} -> {e2:.3e})"
        );
    }

    #[test]
    fn weights_sum_to_constant_rule() {
        // summing all weights must reproduce the constant case exactly:
        // a₀(n) + Σ b_m + 1 = (μ+1) n^μ
        for &mu in &[0.3, 0.5, 1.5] {
            let mut tab = PowerTables::new(mu).unwrap();
            tab.ensure(200);
            for n in [1usize, 2, 7, 50, 200] {
                let mut s = tab.a0(n) + 1.0;
                for m in 1..n {
                    s += tab.b(m);
                }
                let want = (mu + 1.0) * (n as f64).powf(mu);
                assert!(
                    (s - want).abs() <= 1e-10 * want,
                    "mu = {mu}, n = {n}: weight sum {s} vs {want}"
                );
            }
        }
    }

    #[test]
    fn endpoint_matches_sweep_and_validates_input() {
        let mu = 0.8;
        let h = 0.05;
        let vals = sample(h, 40, |s| (1.3 * s).sin() + 0.2);
        let sweep = fractional_convolution_sweep(mu, h, &vals).unwrap();
        let end = PowerTables::new(mu).unwrap().integral_at_end(h, &vals).unwrap();
        assert_eq!(end, sweep[40]);

        let mut tab = PowerTables::new(mu).unwrap();
        assert!(tab.integral_at_end(h, &[1.0]).is_err());
        assert!(tab.integral_at_end(0.0, &[1.0, 2.0]).is_err());
        assert!(PowerTables::new(0.0).is_err());
        assert!(PowerTables::new(-0.4).is_err());
    }

    #[test]
    fn rectangle_weights_integrate_piecewise_constants() {
        // h^μ/μ · Σ rect(n−j)·φ_j over cells [t_j, t_{j+1}] equals the exact
        // integral of a piecewise-constant φ against the kernel
        let mu = 0.45;
        let h = 0.1;
        let n = 30usize;
        let mut tab = PowerTables::new(mu).unwrap();
        tab.ensure(n);
        let phi: Vec<f64> = (0..n).map(|j| ((j * j) % 7) as f64 - 3.0).collect();
        let mut got = 0.0;
        for (j, &v) in phi.iter().enumerate() {
            got += tab.rect(n - j) * v;
        }
        got *= tab.prefactor_rect(h);
        // exact: Σ φ_j ∫_{t_j}^{t_{j+1}} (t_n − s)^{μ−1} ds
        let t_n = n as f64 * h;
        let mut want = 0.0;
        for (j, &v) in phi.iter().enumerate() {
            let (a, b) = (j as f64 * h, (j + 1) as f64 * h);
            want += v * ((t_n - a).powf(mu) - (t_n - b).powf(mu)) / mu;
        }
        assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{got} vs {want}");
    }
}
