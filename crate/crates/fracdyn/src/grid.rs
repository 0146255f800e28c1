//! Uniform time grids, sampled functions, and solver trajectories.
//!
//! Everything in this crate that discretizes an integral or an ODE works on a
//! uniform grid t_j = t0 + j·h. Fractional operators have memory: the value at
//! t_j depends on *all* samples back to the lower terminal, so the grid — not
//! a point — is the natural unit of work.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform grid t_j = t0 + j·h, j = 0..count-1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t0: f64,
    h: f64,
    count: usize,
}

impl TimeGrid {
    /// A grid with `count` points starting at `t0` with step `h > 0`.
    pub fn new(t0: f64, h: f64, count: usize) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain(format!("grid step must be positive, got {h}")));
        }
        if !t0.is_finite() || t0 < 0.0 {
            return Err(Error::Domain(format!("grid origin must be finite and >= 0, got {t0}")));
        }
        if count == 0 {
            return Err(Error::Domain("grid needs at least one point".into()));
        }
        Ok(TimeGrid { t0, h, count })
    }

    /// Grid covering [t0, t_end] with step `h`; t_end is rounded to the
    /// nearest whole number of steps and must be within one part in 1e6 of one.
    pub fn from_range(t0: f64, t_end: f64, h: f64) -> Result<Self> {
        if !(t_end > t0) {
            return Err(Error::Domain(format!("need t_end > t0, got [{t0}, {t_end}]")));
        }
        let steps = (t_end - t0) / h;
        let n = steps.round();
        if n < 1.0 || (steps - n).abs() > 1e-6 * n.max(1.0) {
            return Err(Error::Domain(format!(
                "span {} is not a whole number of steps of {h}",
                t_end - t0
            )));
        }
        TimeGrid::new(t0, h, n as usize + 1)
    }

    /// Grid holding exactly `cycles` periods of length `period`, with
    /// `samples_per_period` steps per period. The step is period/samples so a
    /// period is always a whole number of steps — required by the periodicity
    /// residual, which compares x(t) with x(t + T) sample-for-sample.
    pub fn for_period(period: f64, samples_per_period: usize, cycles: usize) -> Result<Self> {
        if !(period > 0.0) || samples_per_period == 0 || cycles == 0 {
            return Err(Error::Domain("period, samples_per_period and cycles must be positive".into()));
        }
        let h = period / samples_per_period as f64;
        TimeGrid::new(0.0, h, samples_per_period * cycles + 1)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees count >= 1
    }

    /// j-th grid point.
    pub fn t(&self, j: usize) -> f64 {
        self.t0 + self.h * j as f64
    }

    /// Last grid point.
    pub fn t_end(&self) -> f64 {
        self.t(self.count - 1)
    }

    /// All grid points.
    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|j| self.t(j)).collect()
    }

    /// Index of grid point nearest to `t`.
    pub fn nearest_index(&self, t: f64) -> usize {
        let j = ((t - self.t0) / self.h).round();
        (j.max(0.0) as usize).min(self.count - 1)
    }

    /// Number of steps spanning `interval`, if it is a whole number of steps
    /// (within 1e-9 relative).
    pub fn steps_spanning(&self, interval: f64) -> Result<usize> {
        let steps = interval / self.h;
        let n = steps.round();
        if n < 1.0 || (steps - n).abs() > 1e-9 * n.max(1.0) {
            return Err(Error::Coverage(format!(
                "interval {interval} is not a whole number of grid steps of {}",
                self.h
            )));
        }
        Ok(n as usize)
    }
}

/// A scalar function sampled on a [`TimeGrid`], optionally carrying analytic
/// derivative samples.
///
/// `derivs[k-1]` holds samples of the k-th derivative. Operators that need
/// g⁽ⁿ⁾ (Caputo, Riemann-Liouville) use these when present and fall back to
/// second-order finite differences otherwise.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    pub derivs: Vec<Vec<f64>>,
}

impl SampledFunction {
    /// Wrap precomputed samples.
    pub fn from_values(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InsufficientSamples(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledFunction { grid, values, derivs: Vec::new() })
    }

    /// Sample a closure on the grid.
    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.t(j))).collect();
        SampledFunction { grid, values, derivs: Vec::new() }
    }

    /// Attach analytic derivative samples g', g'', ... (in order).
    pub fn with_derivs(mut self, derivs: Vec<Vec<f64>>) -> Result<Self> {
        for (k, d) in derivs.iter().enumerate() {
            if d.len() != self.grid.len() {
                return Err(Error::InsufficientSamples(format!(
                    "derivative {} has {} samples, grid has {}",
                    k + 1,
                    d.len(),
                    self.grid.len()
                )));
            }
        }
        self.derivs = derivs;
        Ok(self)
    }

    /// Sample a closure and its first `n` derivatives given by `dk(k, t)`.
    pub fn from_fn_with_derivs(grid: TimeGrid, f: impl Fn(f64) -> f64, n: usize, dk: impl Fn(usize, f64) -> f64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.t(j))).collect();
        let derivs = (1..=n)
            .map(|k| (0..grid.len()).map(|j| dk(k, grid.t(j))).collect())
            .collect();
        SampledFunction { grid, values, derivs }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Samples of the n-th derivative: analytic if attached, otherwise n
    /// applications of second-order finite differences (central in the
    /// interior, one-sided three-point stencils at the ends).
    pub fn nth_derivative(&self, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Ok(self.values.clone());
        }
        if self.derivs.len() >= n {
            return Ok(self.derivs[n - 1].clone());
        }
        // differentiate the highest analytic derivative we have
        let have = self.derivs.len();
        let mut cur = if have > 0 { self.derivs[have - 1].clone() } else { self.values.clone() };
        for _ in have..n {
            cur = finite_difference(&cur, self.grid.h())?;
        }
        Ok(cur)
    }

    /// g⁽ᵏ⁾(0+) for k = 0..n-1, preferring analytic samples.
    pub fn initial_derivatives(&self, n: usize) -> Result<Vec<f64>> {
        (0..n).map(|k| Ok(self.nth_derivative(k)?[0])).collect()
    }
}

/// Second-order finite difference of uniformly sampled values: central
/// stencils inside, one-sided three-point stencils at both ends.
pub fn finite_difference(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 3 {
        return Err(Error::InsufficientSamples(
            "finite differences need at least 3 samples".into(),
        ));
    }
    let mut out = Vec::with_capacity(n);
    out.push((-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h));
    for j in 1..n - 1 {
        out.push((values[j + 1] - values[j - 1]) / (2.0 * h));
    }
    out.push((3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h));
    Ok(out)
}

/// State jump recorded by the impulsive solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    /// Grid index of the impulse time.
    pub index: usize,
    /// Impulse vector I_k added to the state at that index.
    pub impulse: Vec<f64>,
}

/// Solution of a (possibly impulsive) fractional system on a uniform grid.
///
/// States are stored row-major: `state(j)` is the p-dimensional state at t_j.
/// At an impulse time the stored row is the *right* limit x(t_k⁺); the left
/// limit is `state(j) - impulse`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: TimeGrid,
    pub dim: usize,
    states: Vec<f64>,
    pub jumps: Vec<Jump>,
}

impl Trajectory {
    pub fn new(grid: TimeGrid, dim: usize, states: Vec<f64>) -> Result<Self> {
        if dim == 0 || states.len() != grid.len() * dim {
            return Err(Error::InsufficientSamples(format!(
                "state buffer of {} does not match {} points x {} components",
                states.len(),
                grid.len(),
                dim
            )));
        }
        Ok(Trajectory { grid, dim, states, jumps: Vec::new() })
    }

    /// State vector at grid index j (right limit at impulse times).
    pub fn state(&self, j: usize) -> &[f64] {
        &self.states[j * self.dim..(j + 1) * self.dim]
    }

    /// Left limit at grid index j: differs from `state(j)` only at impulse rows.
    pub fn state_left(&self, j: usize) -> Vec<f64> {
        let mut s = self.state(j).to_vec();
        if let Some(jump) = self.jumps.iter().find(|jm| jm.index == j) {
            for (si, ii) in s.iter_mut().zip(&jump.impulse) {
                *si -= ii;
            }
        }
        s
    }

    /// Copy of one component's sample series.
    pub fn component(&self, i: usize) -> Vec<f64> {
        (0..self.grid.len()).map(|j| self.states[j * self.dim + i]).collect()
    }

    /// Largest |x_i(t_j)| over the whole trajectory.
    pub fn sup_norm(&self) -> f64 {
        self.states.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Sub-trajectory restricted to grid indices [lo, hi] (inclusive).
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Trajectory> {
        if lo > hi || hi >= self.grid.len() {
            return Err(Error::Coverage(format!("slice [{lo}, {hi}] outside trajectory")));
        }
        let grid = TimeGrid::new(self.grid.t(lo), self.grid.h(), hi - lo + 1)?;
        let states = self.states[lo * self.dim..(hi + 1) * self.dim].to_vec();
        Trajectory::new(grid, self.dim, states)
    }
}
