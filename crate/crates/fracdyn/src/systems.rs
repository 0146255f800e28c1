//! Right-hand sides of the fractional systems this crate ships, and the JSON
//! description used by the CLI to select and configure one.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Autonomous or forced vector field f(t, x) evaluated into `out`.
pub type Rhs = Box<dyn Fn(f64, &[f64], &mut [f64]) + Send + Sync>;

/// A named vector field of fixed dimension.
pub struct System {
    pub name: String,
    pub dim: usize,
    pub rhs: Rhs,
    /// Forcing period for non-autonomous systems, None for autonomous ones.
    pub forcing_period: Option<f64>,
}

impl System {
    pub fn eval(&self, t: f64, x: &[f64], out: &mut [f64]) {
        (self.rhs)(t, x, out)
    }
}

fn param_count_error(name: &str, want: String, got: usize) -> Error {
    Error::Config(format!("system '{name}' expects {want} parameters, got {got}"))
}

/// Build a registered system.
///
/// * `"nn2"` — two-neuron Hopfield network with tanh activation and
///   self-excitation: ẋ₁ = −x₁ + 2 tanh x₁ − ½ tanh x₂,
///   ẋ₂ = −x₂ + tanh x₁ + 2 tanh x₂. No parameters, dimension 2. The origin
///   is an unstable spiral; classical (order 1) runs from small initial data
///   fall into one of two symmetric stable equilibria near ±(1.12, 2.79),
///   while at orders near 0.5 the trajectory settles into a persistent
///   bounded oscillation instead.
/// * `"linear"` — ẋ = A x + b with `params` = row-major A then b (p² + p
///   values for dimension p).
/// * `"forced_periodic"` — ẋᵢ = amp·cos(2πt/T) − c·xᵢ with
///   `params = [T, amp, c]`; the only non-autonomous entry.
/// * `"constant"` — ẋᵢ = cᵢ with `params` = c (dimension = len).
pub fn build_system(name: &str, params: &[f64], dim: usize) -> Result<System> {
    if dim == 0 {
        return Err(Error::Config("system dimension must be at least 1".into()));
    }
    match name {
        "nn2" => {
            if dim != 2 {
                return Err(Error::Config(format!("system 'nn2' is 2-dimensional, got x0 of length {dim}")));
            }
            if !params.is_empty() {
                return Err(param_count_error(name, "no".into(), params.len()));
            }
            Ok(System {
                name: name.into(),
                dim: 2,
                rhs: Box::new(|_t, x, out| {
                    out[0] = -x[0] + 2.0 * x[0].tanh() - 0.5 * x[1].tanh();
                    out[1] = -x[1] + x[0].tanh() + 2.0 * x[1].tanh();
                }),
                forcing_period: None,
            })
        }
        "linear" => {
            let want = dim * dim + dim;
            if params.len() != want {
                return Err(param_count_error(name, format!("{want} (A row-major, then b)"), params.len()));
            }
            let a = params[..dim * dim].to_vec();
            let b = params[dim * dim..].to_vec();
            Ok(System {
                name: name.into(),
                dim,
                rhs: Box::new(move |_t, x, out| {
                    for i in 0..x.len() {
                        let mut acc = b[i];
                        for (j, xj) in x.iter().enumerate() {
                            acc += a[i * x.len() + j] * xj;
                        }
                        out[i] = acc;
                    }
                }),
                forcing_period: None,
            })
        }
        "forced_periodic" => {
            if params.len() != 3 {
                return Err(param_count_error(name, "3 ([T, amp, c])".into(), params.len()));
            }
            let (t_per, amp, c) = (params[0], params[1], params[2]);
            if !(t_per > 0.0) {
                return Err(Error::Config(format!("forcing period must be positive, got {t_per}")));
            }
            let omega = 2.0 * std::f64::consts::PI / t_per;
            Ok(System {
                name: name.into(),
                dim,
                rhs: Box::new(move |t, x, out| {
                    let drive = amp * (omega * t).cos();
                    for (o, xi) in out.iter_mut().zip(x) {
                        *o = drive - c * xi;
                    }
                }),
                forcing_period: Some(t_per),
            })
        }
        "constant" => {
            if params.len() != dim {
                return Err(param_count_error(name, format!("{dim} (one rate per component)"), params.len()));
            }
            let c = params.to_vec();
            Ok(System {
                name: name.into(),
                dim,
                rhs: Box::new(move |_t, _x, out| out.copy_from_slice(&c)),
                forcing_period: None,
            })
        }
        other => Err(Error::UnknownSystem(other.into())),
    }
}

/// JSON description of a solve: which system, its parameters, the
/// per-component derivative orders, initial state, and grid.
///
/// ```json
/// {
///   "name": "nn2", "params": [],
///   "orders": [0.5, 0.5], "x0": [0.1, 0.1],
///   "t_end": 200.0, "h": 0.01
/// }
/// ```
///
/// For impulsive runs, `period` sets the schedule period and `impulse_times`
/// lists the impulse instants inside one period (in `(0, period]`); when
/// `impulse_times` is absent, `impulses_per_period` places that many
/// equidistant impulses instead (default one, at the period end).
/// `periods_to_run` may replace `t_end`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
    pub orders: Vec<f64>,
    pub x0: Vec<f64>,
    #[serde(default)]
    pub t_end: Option<f64>,
    pub h: f64,
    #[serde(default)]
    pub period: Option<f64>,
    #[serde(default)]
    pub periods_to_run: Option<usize>,
    #[serde(default)]
    pub impulse_times: Option<Vec<f64>>,
    #[serde(default)]
    pub impulses_per_period: Option<usize>,
}

impl SystemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SystemSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x0.is_empty() {
            return Err(Error::Config("x0 must have at least one component".into()));
        }
        if self.orders.len() != self.x0.len() {
            return Err(Error::Config(format!(
                "{} orders for {} state components",
                self.orders.len(),
                self.x0.len()
            )));
        }
        for &a in &self.orders {
            // 1.0 is allowed as the classical-comparison order
            if !(a > 0.0 && a <= 1.0) || !a.is_finite() {
                return Err(Error::Config(format!(
                    "solver orders must lie in (0, 1]; got {a}"
                )));
            }
        }
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::Config(format!("step h must be positive, got {}", self.h)));
        }
        match (self.t_end, self.period, self.periods_to_run) {
            (Some(te), _, _) if !(te > 0.0) => {
                Err(Error::Config(format!("t_end must be positive, got {te}")))
            }
            (None, Some(p), Some(n)) if p > 0.0 && n > 0 => Ok(()),
            (None, _, _) => Err(Error::Config(
                "give either t_end, or period together with periods_to_run".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Total integration time: explicit `t_end`, or period × periods_to_run.
    pub fn total_time(&self) -> f64 {
        match self.t_end {
            Some(te) => te,
            None => self.period.unwrap_or(0.0) * self.periods_to_run.unwrap_or(0) as f64,
        }
    }

    pub fn build(&self) -> Result<System> {
        self.validate()?;
        build_system(&self.name, &self.params, self.x0.len())
    }
}
