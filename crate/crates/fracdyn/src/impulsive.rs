//! Impulsive fractional systems: D^{α_i} x_i = f_i(t, x) between impulse
//! times, Δx(τ_k) = I_k at them, with the Caputo memory restarting at every
//! impulse.
//!
//! The point of this module is the construction that *recovers* periodic
//! behaviour which plain fractional systems cannot have: choosing each
//! impulse to cancel the fractional integral accumulated since the previous
//! impulse,
//!
//! ```text
//! I_k = −(1/Γ(α)) ∫_{τ_{k−1}}^{τ_k} (τ_k − s)^{α−1} f(s, x(s)) ds,
//! ```
//!
//! makes x(τ_k⁺) = x(τ_{k−1}⁺) exactly, so a schedule whose impulse times
//! repeat with period T produces a T-periodic solution. The impulses do the
//! forgetting that the operator refuses to do.

use crate::error::{Error, Result};
use crate::grid::{Jump, TimeGrid, Trajectory};
use crate::quadrature::PowerTables;
use crate::solver::{solve_caputo, SolveOptions};
use crate::special::gamma::recip_gamma_real;
use crate::systems::{System, SystemSpec};

/// Impulse times repeating with a fixed period: τ = c·T + offset for every
/// cycle c and every offset in the schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseSchedule {
    period: f64,
    /// Strictly increasing, within (0, period].
    offsets: Vec<f64>,
}

impl ImpulseSchedule {
    pub fn new(period: f64, offsets: Vec<f64>) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::Schedule(format!("period must be positive, got {period}")));
        }
        if offsets.is_empty() {
            return Err(Error::Schedule("at least one impulse per period is required".into()));
        }
        let mut prev = 0.0;
        for &o in &offsets {
            if !(o > prev) || o > period {
                return Err(Error::Schedule(format!(
                    "impulse offsets must increase strictly within (0, period]; got {offsets:?} \
                     for period {period}"
                )));
            }
            prev = o;
        }
        Ok(ImpulseSchedule { period, offsets })
    }

    /// `count` equally spaced impulses per period, the last exactly at T.
    pub fn equidistant(period: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Schedule("at least one impulse per period is required".into()));
        }
        let offsets = (1..=count).map(|j| period * j as f64 / count as f64).collect();
        ImpulseSchedule::new(period, offsets)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// All impulse times in (0, t_end], in order.
    pub fn times_within(&self, t_end: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut cycle = 0usize;
        loop {
            let base = cycle as f64 * self.period;
            if base > t_end {
                break;
            }
            for &o in &self.offsets {
                let t = base + o;
                if t <= t_end * (1.0 + 1e-12) {
                    out.push(t.min(t_end));
                }
            }
            cycle += 1;
        }
        out
    }

    /// Build the schedule declared by a [`SystemSpec`]: explicit
    /// `impulse_times` inside one period when given, otherwise
    /// `impulses_per_period` equidistant impulses (default one, at the
    /// period end). The spec must carry a period.
    pub fn from_spec(spec: &SystemSpec) -> Result<Self> {
        let period = spec.period.ok_or_else(|| {
            Error::Config("an impulsive run needs a period in the system spec".into())
        })?;
        match (&spec.impulse_times, spec.impulses_per_period) {
            (Some(times), _) => ImpulseSchedule::new(period, times.clone()),
            (None, Some(count)) => ImpulseSchedule::equidistant(period, count),
            (None, None) => ImpulseSchedule::equidistant(period, 1),
        }
    }
}

/// The periodicity-restoring impulse for one inter-impulse segment:
/// −(1/Γ(α_i)) ∫ (t_right − s)^{α_i−1} f_i(s, x(s)) ds over the segment,
/// from the already-computed segment trajectory.
pub fn compute_impulse(system: &System, orders: &[f64], segment: &Trajectory) -> Result<Vec<f64>> {
    if segment.dim != system.dim || orders.len() != system.dim {
        return Err(Error::Config("system, orders and segment dimensions disagree".into()));
    }
    let n = segment.grid.len();
    if n < 2 {
        return Err(Error::Coverage(
            "impulse integral needs a segment of at least one step".into(),
        ));
    }
    // f along the segment
    let mut f_rows = vec![0.0; n * system.dim];
    let mut buf = vec![0.0; system.dim];
    for j in 0..n {
        system.eval(segment.grid.t(j), segment.state(j), &mut buf);
        f_rows[j * system.dim..(j + 1) * system.dim].copy_from_slice(&buf);
    }
    let mut impulse = Vec::with_capacity(system.dim);
    for (i, &a) in orders.iter().enumerate() {
        let series: Vec<f64> = (0..n).map(|j| f_rows[j * system.dim + i]).collect();
        let mut tab = PowerTables::new(a)?;
        let integral = tab.integral_at_end(segment.grid.h(), &series)?;
        impulse.push(-recip_gamma_real(a) * integral);
    }
    Ok(impulse)
}

/// Solve the impulsive system on [0, t_end] with periodicity-restoring
/// impulses at the scheduled times (which must land on grid points).
///
/// Between impulses this is [`solve_caputo`] with the memory's lower
/// terminal at the previous impulse; at each impulse time the computed jump
/// is applied and the stored row is the right limit x(τ⁺).
pub fn solve_impulsive(
    system: &System,
    orders: &[f64],
    x0: &[f64],
    schedule: &ImpulseSchedule,
    t_end: f64,
    h: f64,
    opts: &SolveOptions,
) -> Result<Trajectory> {
    let grid = TimeGrid::from_range(0.0, t_end, h)?;
    let dim = system.dim;

    // impulse times -> grid indices, all exact
    let mut boundaries: Vec<(usize, bool)> = Vec::new(); // (index, is_impulse)
    for t in schedule.times_within(t_end) {
        let steps = grid.steps_spanning(t).map_err(|_| {
            Error::Schedule(format!(
                "impulse time {t} does not land on the grid (h = {h}); choose h so that \
                 every impulse offset is a whole number of steps"
            ))
        })?;
        boundaries.push((steps, true));
    }
    if boundaries.last().map(|&(j, _)| j) != Some(grid.len() - 1) {
        boundaries.push((grid.len() - 1, false));
    }

    let mut states = vec![0.0; grid.len() * dim];
    states[..dim].copy_from_slice(x0);
    let mut jumps = Vec::new();
    let mut cur = x0.to_vec();
    let mut seg_start = 0usize;
    for &(end, is_impulse) in &boundaries {
        if end <= seg_start {
            return Err(Error::Schedule(format!(
                "impulse times must be at least one grid step apart (indices {seg_start}, {end})"
            )));
        }
        let seg_grid = TimeGrid::new(grid.t(seg_start), h, end - seg_start + 1)?;
        let seg = solve_caputo(system, orders, &cur, &seg_grid, opts)?;
        for j in 1..seg_grid.len() {
            states[(seg_start + j) * dim..(seg_start + j + 1) * dim].copy_from_slice(seg.state(j));
        }
        cur = seg.state(seg_grid.len() - 1).to_vec();
        if is_impulse {
            let impulse = compute_impulse(system, orders, &seg)?;
            for (c, i) in cur.iter_mut().zip(&impulse) {
                *c += i;
            }
            states[end * dim..(end + 1) * dim].copy_from_slice(&cur);
            jumps.push(Jump { index: end, impulse });
        }
        seg_start = end;
    }

    let mut traj = Trajectory::new(grid, dim, states)?;
    traj.jumps = jumps;
    Ok(traj)
}
