//! The three classical fractional derivatives with lower terminal 0 —
//! Caputo, Riemann-Liouville, and Grünwald-Letnikov — plus the residual of
//! the identity connecting them.
//!
//! For α ∈ (n−1, n) and g sampled on a uniform grid starting at t = 0:
//!
//! * **Caputo**: convolve the n-th derivative of g with the kernel
//!   (t−s)^{n−α−1}/Γ(n−α).
//! * **Riemann-Liouville**: convolve g itself, then take the n-th classical
//!   derivative of the result. Blows up like t^{−α} at the origin whenever
//!   g(0) ≠ 0.
//! * **Grünwald-Letnikov**: the limit of the fractional backward difference
//!   h^{−α} Σ_r w_r g(t − rh), with binomial weights w_r = (−1)^r C(α, r).
//!
//! On smooth functions RL and GL coincide, and they differ from Caputo by
//! Σ_{k<n} g⁽ᵏ⁾(0⁺) t^{k−α}/Γ(k−α+1) — the memory the Caputo form discards.
//! [`definition_relation_residual`] measures how well the discretizations
//! reproduce that identity.

use crate::error::{Error, Result};
use crate::grid::{SampledFunction, TimeGrid};
use crate::quadrature::PowerTables;
use crate::special::gamma::recip_gamma_real;

/// A validated derivative order α.
///
/// Ordinary construction accepts non-integer α ∈ (0, 2) — the range where the
/// theory of the operators in this crate is standard (n = ⌈α⌉ ∈ {1, 2}).
/// Integer orders are deliberately rejected: a "fractional derivative of
/// order 1" is just d/dt, and silently accepting it hides bugs in callers
/// that meant something else. For side-by-side comparisons against classical
/// calculus, [`FractionalOrder::integer_comparison`] constructs the integer
/// order explicitly and the operators reduce to plain differentiation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
    integer_comparison: bool,
}

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 2.0 {
            return Err(Error::Domain(format!(
                "derivative order must lie in (0, 2), got {alpha}"
            )));
        }
        if alpha == alpha.floor() {
            return Err(Error::Domain(format!(
                "order {alpha} is an integer; use integer_comparison({alpha}) if a classical \
                 derivative for comparison is really what you want"
            )));
        }
        Ok(FractionalOrder { alpha, integer_comparison: false })
    }

    /// Classical integer order n ∈ {1, 2}, marked as a comparison path.
    pub fn integer_comparison(n: u32) -> Result<Self> {
        if !(1..=2).contains(&n) {
            return Err(Error::Domain(format!("integer comparison order must be 1 or 2, got {n}")));
        }
        Ok(FractionalOrder { alpha: n as f64, integer_comparison: true })
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    pub fn is_integer_comparison(&self) -> bool {
        self.integer_comparison
    }

    /// Smallest integer n with n ≥ α (number of classical derivatives used).
    pub fn n(&self) -> usize {
        if self.integer_comparison {
            self.alpha as usize
        } else {
            self.alpha.floor() as usize + 1
        }
    }
}

fn require_origin_grid(g: &SampledFunction) -> Result<()> {
    if g.grid.t0() != 0.0 {
        return Err(Error::Domain(format!(
            "fractional derivatives here use lower terminal 0; the sample grid starts at {}",
            g.grid.t0()
        )));
    }
    if g.len() < 3 {
        return Err(Error::InsufficientSamples(format!(
            "need at least 3 samples, got {}",
            g.len()
        )));
    }
    Ok(())
}

/// Grünwald-Letnikov binomial weights w_0..w_{count-1}:
/// w_0 = 1, w_r = w_{r−1} (1 − (α+1)/r) = (−1)^r C(α, r).
pub fn gl_weights(alpha: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    if count == 0 {
        return w;
    }
    w.push(1.0);
    for r in 1..count {
        let prev = w[r - 1];
        w.push(prev * (1.0 - (alpha + 1.0) / r as f64));
    }
    w
}

/// Grünwald-Letnikov derivative on the sample grid:
/// (D^α g)(t_j) ≈ h^{−α} Σ_{r=0}^{j} w_r g(t_{j−r}).
///
/// First-order accurate in h on smooth functions. The value at t = 0
/// degenerates to g(0)·h^{−α} — comparisons should start past the origin.
pub fn gl_derivative(g: &SampledFunction, order: &FractionalOrder) -> Result<SampledFunction> {
    require_origin_grid(g)?;
    let n = g.len();
    let w = gl_weights(order.value(), n);
    let scale = g.grid.h().powf(-order.value());
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = 0.0;
        for r in 0..=j {
            acc += w[r] * g.values[j - r];
        }
        out.push(scale * acc);
    }
    SampledFunction::from_values(g.grid.clone(), out)
}

/// Caputo derivative on the sample grid: the kernel (t−s)^{n−α−1}/Γ(n−α)
/// integrated against a piecewise-linear interpolant of g⁽ⁿ⁾ (analytic
/// derivative samples when attached, second-order finite differences
/// otherwise). Value 0 at t = 0.
pub fn caputo_derivative(g: &SampledFunction, order: &FractionalOrder) -> Result<SampledFunction> {
    require_origin_grid(g)?;
    let n = order.n();
    let phi = g.nth_derivative(n)?;
    if order.is_integer_comparison() {
        // n − α = 0: the convolution collapses to g⁽ⁿ⁾ itself
        return SampledFunction::from_values(g.grid.clone(), phi);
    }
    let mu = n as f64 - order.value();
    let mut tab = PowerTables::new(mu)?;
    let mut vals = tab.sweep(g.grid.h(), &phi)?;
    let r = recip_gamma_real(mu);
    for v in &mut vals {
        *v *= r;
    }
    SampledFunction::from_values(g.grid.clone(), vals)
}

/// Riemann-Liouville derivative and whether it is singular at the origin.
#[derive(Debug, Clone)]
pub struct RlDerivative {
    /// Sample values; the grid starts at t = h when `singular_at_origin`
    /// (the value at t = 0 does not exist), at t = 0 otherwise.
    pub samples: SampledFunction,
    /// True when g(0⁺) ≠ 0, so the derivative grows like t^{−α} at 0.
    pub singular_at_origin: bool,
}

/// Riemann-Liouville derivative: n-th finite difference of the fractional
/// integral J^{n−α} g computed by product-trapezoid quadrature.
pub fn rl_derivative(g: &SampledFunction, order: &FractionalOrder) -> Result<RlDerivative> {
    require_origin_grid(g)?;
    let n = order.n();
    if order.is_integer_comparison() {
        let samples = SampledFunction::from_values(g.grid.clone(), g.nth_derivative(n)?)?;
        return Ok(RlDerivative { samples, singular_at_origin: false });
    }
    let mu = n as f64 - order.value();
    let mut tab = PowerTables::new(mu)?;
    let mut integral = tab.sweep(g.grid.h(), &g.values)?;
    let r = recip_gamma_real(mu);
    for v in &mut integral {
        *v *= r;
    }
    let smooth = SampledFunction::from_values(g.grid.clone(), integral)?;
    let deriv = smooth.nth_derivative(n)?;

    let scale = g.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let singular = g.values[0].abs() > 1e-10 * scale.max(1.0);
    if singular {
        // drop the origin: the finite-difference value there approximates a
        // point where the true derivative is infinite
        let grid = TimeGrid::new(g.grid.h(), g.grid.h(), g.len() - 1)?;
        let samples = SampledFunction::from_values(grid, deriv[1..].to_vec())?;
        Ok(RlDerivative { samples, singular_at_origin: true })
    } else {
        let samples = SampledFunction::from_values(g.grid.clone(), deriv)?;
        Ok(RlDerivative { samples, singular_at_origin: false })
    }
}

/// Deviations from the identity tying the three definitions together,
/// measured over grid points with t > skip_below (the far side of the
/// origin's singular/startup region).
#[derive(Debug, Clone)]
pub struct RelationResidual {
    /// max_t |RL − GL|
    pub rl_vs_gl: f64,
    /// max_t |(Caputo + Σ_{k<n} g⁽ᵏ⁾(0⁺) t^{k−α}/Γ(k−α+1)) − RL|
    pub caputo_corrected_vs_rl: f64,
    /// Comparisons start at this time (exclusive).
    pub skip_below: f64,
}

/// Evaluate all three derivatives of `g` and return the worst-case
/// disagreement between RL and GL, and between initial-value-corrected
/// Caputo and RL, excluding the first grid step where GL degenerates and RL
/// may be singular.
pub fn definition_relation_residual(
    g: &SampledFunction,
    order: &FractionalOrder,
) -> Result<RelationResidual> {
    require_origin_grid(g)?;
    if order.is_integer_comparison() {
        return Err(Error::Domain(
            "the definition relation is about non-integer orders; the three definitions \
             coincide with the classical derivative at integer order"
                .into(),
        ));
    }
    let n = order.n();
    let alpha = order.value();
    let caputo = caputo_derivative(g, order)?;
    let rl = rl_derivative(g, order)?;
    let gl = gl_derivative(g, order)?;
    let init = g.initial_derivatives(n)?;

    let h = g.grid.h();
    let offset = if rl.singular_at_origin { 1 } else { 0 };
    let mut rl_vs_gl = 0.0f64;
    let mut cap_vs_rl = 0.0f64;
    for j in 0..rl.samples.len() {
        let t = rl.samples.grid.t(j);
        if t <= h {
            continue;
        }
        let jg = j + offset; // index of the same time on the full grid
        let rl_v = rl.samples.values[j];
        rl_vs_gl = rl_vs_gl.max((rl_v - gl.values[jg]).abs());
        let mut corr = 0.0;
        for (k, gk0) in init.iter().enumerate() {
            corr += gk0 * t.powf(k as f64 - alpha) * recip_gamma_real(k as f64 - alpha + 1.0);
        }
        cap_vs_rl = cap_vs_rl.max((caputo.values[jg] + corr - rl_v).abs());
    }
    Ok(RelationResidual { rl_vs_gl, caputo_corrected_vs_rl: cap_vs_rl, skip_below: h })
}
