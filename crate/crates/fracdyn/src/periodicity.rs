//! Deciding, from samples, whether a signal is periodic — and in which of
//! the senses that fractional dynamics forces apart.
//!
//! A fractional derivative of a T-periodic function is never T-periodic (the
//! memory of the initial segment decays only algebraically), but it *is*
//! asymptotically T-periodic: it approaches a periodic limit as t → ∞. The
//! reports here therefore distinguish:
//!
//! * **exact periodicity** — every cycle matches the next to within a small
//!   multiple of the signal amplitude;
//! * **asymptotic periodicity** — the cycle-to-cycle mismatch is
//!   non-increasing, settling toward zero without ever being required to
//!   reach it.

use crate::error::{Error, Result};
use crate::grid::{TimeGrid, Trajectory};
use crate::special::mittag_leffler::caputo_sin_closed_form;
use serde::Serialize;

/// Cycle-by-cycle comparison of a signal with its translate by one period.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityReport {
    pub period: f64,
    pub samples_per_period: usize,
    /// r_k = max_{t in cycle k, all components} |x(t + T) − x(t)|.
    pub cycle_residuals: Vec<f64>,
    /// Half the largest peak-to-peak range over all components.
    pub amplitude: f64,
    /// Residuals at or below this count as exact: 1e-6 × max(amplitude, 1e-12).
    pub exact_threshold: f64,
    pub exact_periodic: bool,
    /// True when the residuals never increase (beyond the exact threshold):
    /// the signal is settling toward a periodic limit.
    pub asymptotically_periodic: bool,
}

/// Compare each cycle of the sampled components against the next over
/// `period`, which must be a whole number of grid steps (the comparison is
/// sample-for-sample; interpolating would hide exactly the small residuals
/// this is meant to measure).
pub fn periodicity_residual(
    grid: &TimeGrid,
    series: &[Vec<f64>],
    period: f64,
) -> Result<PeriodicityReport> {
    if series.is_empty() || series.iter().any(|s| s.len() != grid.len()) {
        return Err(Error::InsufficientSamples(
            "periodicity check needs non-empty series matching the grid".into(),
        ));
    }
    let m = grid.steps_spanning(period)?;
    let n = grid.len();
    if n < 2 * m + 1 {
        return Err(Error::Coverage(format!(
            "need at least two full periods ({} samples), have {n}",
            2 * m + 1
        )));
    }
    let cycles = (n - 1) / m - 1; // comparable cycle pairs
    let mut cycle_residuals = vec![0.0f64; cycles];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in series {
        for (k, r) in cycle_residuals.iter_mut().enumerate() {
            for j in k * m..=(k + 1) * m {
                *r = r.max((s[j + m] - s[j]).abs());
            }
        }
        for &v in s {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let amplitude = 0.5 * (hi - lo);
    let exact_threshold = 1e-6 * amplitude.max(1e-12);
    let exact_periodic = cycle_residuals.iter().all(|r| *r <= exact_threshold);
    let asymptotically_periodic = cycle_residuals
        .windows(2)
        .all(|w| w[1] <= w[0] + exact_threshold);
    Ok(PeriodicityReport {
        period,
        samples_per_period: m,
        cycle_residuals,
        amplitude,
        exact_threshold,
        exact_periodic,
        asymptotically_periodic,
    })
}

/// [`periodicity_residual`] over every component of a trajectory.
pub fn trajectory_periodicity(traj: &Trajectory, period: f64) -> Result<PeriodicityReport> {
    let series: Vec<Vec<f64>> = (0..traj.dim).map(|i| traj.component(i)).collect();
    periodicity_residual(&traj.grid, &series, period)
}

/// Period estimated from the autocorrelation of a single sampled component.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodEstimate {
    pub period: f64,
    /// Integer lag of the chosen autocorrelation peak.
    pub lag: usize,
    /// Normalized correlation at that peak (1 = perfect repetition).
    pub correlation: f64,
}

/// Estimate the fundamental period of `series`: mean-detrended, normalized
/// autocorrelation; candidate peaks need correlation > 0.5; the smallest lag
/// within 1e-4 of the best peak wins (so the fundamental beats its own
/// multiples); sub-sample refinement by parabolic interpolation.
pub fn estimate_period(series: &[f64], h: f64) -> Result<PeriodEstimate> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain(format!("sample step must be positive, got {h}")));
    }
    let n = series.len();
    if n < 32 {
        return Err(Error::InsufficientSamples(format!(
            "period estimation needs at least 32 samples, got {n}"
        )));
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let y: Vec<f64> = series.iter().map(|v| v - mean).collect();

    let max_lag = n / 2;
    let mut r = vec![0.0f64; max_lag + 1];
    for (lag, rl) in r.iter_mut().enumerate().take(max_lag + 1).skip(1) {
        let mut num = 0.0;
        let mut d0 = 0.0;
        let mut d1 = 0.0;
        for j in 0..n - lag {
            num += y[j] * y[j + lag];
            d0 += y[j] * y[j];
            d1 += y[j + lag] * y[j + lag];
        }
        let den = (d0 * d1).sqrt();
        *rl = if den > 0.0 { num / den } else { 0.0 };
    }

    const MIN_LAG: usize = 10;
    let mut peaks: Vec<(usize, f64)> = Vec::new();
    for lag in MIN_LAG.max(2)..max_lag {
        if r[lag] > 0.5 && r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1] {
            peaks.push((lag, r[lag]));
        }
    }
    let best = peaks
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let chosen = peaks.iter().find(|&&(_, v)| v >= best - 1e-4).copied();
    let (lag, corr) = chosen.ok_or_else(|| {
        Error::NoOscillation(format!(
            "no autocorrelation peak above 0.5 for lags in [{MIN_LAG}, {max_lag}); the signal \
             does not repeat within the sampled window"
        ))
    })?;

    // parabola through the peak and its neighbours
    let (a, b, c) = (r[lag - 1], r[lag], r[lag + 1]);
    let denom = a - 2.0 * b + c;
    let d = if denom.abs() > 1e-300 { (a - c) / (2.0 * denom) } else { 0.0 };
    let d = d.clamp(-0.5, 0.5);
    Ok(PeriodEstimate { period: (lag as f64 + d) * h, lag, correlation: corr })
}

/// Residual of the claim "the classical derivative of a T-periodic sampled
/// signal is T-periodic": max interior mismatch of the finite-difference
/// derivative across one period (the one-sided end stencils are excluded —
/// their error is an artifact of the boundary, not of the derivative).
pub fn integer_derivative_periodicity_residual(
    grid: &TimeGrid,
    series: &[f64],
    period: f64,
) -> Result<f64> {
    if series.len() != grid.len() {
        return Err(Error::InsufficientSamples("series does not match grid".into()));
    }
    let m = grid.steps_spanning(period)?;
    if grid.len() < 2 * m + 2 {
        return Err(Error::Coverage("need at least two full periods".into()));
    }
    let d = crate::grid::finite_difference(series, grid.h())?;
    let mut worst = 0.0f64;
    for j in 1..d.len() - 1 - m {
        worst = worst.max((d[j + m] - d[j]).abs());
    }
    Ok(worst)
}

/// |D^α sin − sin(t + απ/2)| at the requested times: the algebraically
/// decaying distance between the fractional derivative of sin and the
/// periodic wave it approaches.
#[derive(Debug, Clone, Serialize)]
pub struct DeviationCurve {
    pub alpha: f64,
    pub ts: Vec<f64>,
    pub deviations: Vec<f64>,
}

impl DeviationCurve {
    /// Log-log slope of deviation against t (least squares); the theory
    /// predicts ≈ −(1 + α).
    pub fn decay_exponent(&self) -> f64 {
        let n = self.ts.len() as f64;
        let lx: Vec<f64> = self.ts.iter().map(|t| t.ln()).collect();
        let ly: Vec<f64> = self.deviations.iter().map(|d| d.max(1e-300).ln()).collect();
        let mx = lx.iter().sum::<f64>() / n;
        let my = ly.iter().sum::<f64>() / n;
        let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
        num / den
    }
}

/// Evaluate the deviation curve from the closed form of D^α sin
/// (t^{1−α} E_{2,2−α}(−t²)), α ∈ (0, 1), at strictly positive times.
pub fn caputo_sin_deviation(alpha: f64, ts: &[f64]) -> Result<DeviationCurve> {
    if ts.len() < 2 {
        return Err(Error::InsufficientSamples("need at least two sample times".into()));
    }
    let mut deviations = Vec::with_capacity(ts.len());
    for &t in ts {
        let cf = caputo_sin_closed_form(alpha, t)?;
        let limit = (t + alpha * std::f64::consts::FRAC_PI_2).sin();
        deviations.push((cf - limit).abs());
    }
    Ok(DeviationCurve { alpha, ts: ts.to_vec(), deviations })
}
