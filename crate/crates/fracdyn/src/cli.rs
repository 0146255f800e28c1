//! Command-line interface: one binary, one subcommand per capability.
//!
//! Every subcommand writes to stdout by default (`--out FILE` redirects) and
//! has a natural output format — CSV for anything tabular, JSON for reports —
//! switchable with `--format`. Errors are printed by `main` as a one-line
//! JSON object on stderr, and the process exit code classifies the failure:
//! 2 for configuration problems, 3 for numerical failures, 4 for I/O.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{SampledFunction, TimeGrid, Trajectory};
use crate::impulsive::{solve_impulsive, ImpulseSchedule};
use crate::io;
use crate::mellin::{proof_witness, StripWindow, WitnessReport};
use crate::operators::{caputo_derivative, gl_derivative, rl_derivative, FractionalOrder};
use crate::periodicity::{estimate_period, trajectory_periodicity, PeriodEstimate, PeriodicityReport};
use crate::solver::{solve_caputo, SolveOptions};
use crate::special::{caputo_sin_closed_form, mittag_leffler, MLParams};
use crate::systems::SystemSpec;

#[derive(Debug, Parser)]
#[command(
    name = "fracdyn",
    version,
    about = "Fractional-calculus dynamics: operators, Mittag-Leffler functions, solvers, \
             periodicity analysis, and Mellin diagnostics",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the two-parameter Mittag-Leffler function E_{alpha,beta}(z)
    MlEval(MlEvalArgs),
    /// Tabulate fractional derivatives of a named test function
    Deriv(DerivArgs),
    /// Integrate a fractional-order system (Adams-Bashforth-Moulton scheme)
    Solve(SolveArgs),
    /// Integrate a fractional-order system with periodicity-restoring impulses
    Impulsive(ImpulsiveArgs),
    /// Measure how close a sampled trajectory is to being periodic
    AnalyzePeriod(AnalyzePeriodArgs),
    /// Sample the Mellin-strip witness that blocks exact periodicity
    MellinWitness(MellinWitnessArgs),
    /// Emit plot-ready data sets for the reference figures
    ReproduceFigure(ReproduceFigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (each subcommand has a natural default)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl OutputArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn writer(&self) -> Result<Box<dyn std::io::Write>> {
        io::output_writer(self.out.as_deref())
    }
}

#[derive(Debug, Args)]
struct MlEvalArgs {
    /// First Mittag-Leffler parameter (must be positive)
    #[arg(long)]
    alpha: f64,
    /// Second Mittag-Leffler parameter
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Argument: a real number like "-1.5" or a complex one like "1+2i" or "0.5,−3"
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct DerivArgs {
    /// Test function to differentiate
    #[arg(long, value_enum, default_value_t = NamedFunction::Sin)]
    function: NamedFunction,
    /// Derivative order in (0, 2); integers 1 and 2 give the classical derivative
    #[arg(long)]
    order: f64,
    /// Which definition to tabulate
    #[arg(long, value_enum, default_value_t = DerivKind::All)]
    kind: DerivKind,
    /// End of the time window [0, t-end]
    #[arg(long, default_value_t = 10.0)]
    t_end: f64,
    /// Grid step
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DerivKind {
    Caputo,
    RiemannLiouville,
    GrunwaldLetnikov,
    All,
}

/// Named sample functions with analytic derivatives, so the Caputo operator
/// and the boundary-function witness can use exact initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NamedFunction {
    /// sin t (period 2*pi)
    Sin,
    /// sin 2t (period pi)
    Sin2,
    /// cos t (period 2*pi)
    Cos,
    /// t^2
    Square,
    /// e^{-t}
    ExpDecay,
    /// constant 1
    Const,
}

impl NamedFunction {
    fn eval(self, t: f64) -> f64 {
        match self {
            NamedFunction::Sin => t.sin(),
            NamedFunction::Sin2 => (2.0 * t).sin(),
            NamedFunction::Cos => t.cos(),
            NamedFunction::Square => t * t,
            NamedFunction::ExpDecay => (-t).exp(),
            NamedFunction::Const => 1.0,
        }
    }

    /// k-th derivative at t, exact for every k >= 1.
    fn deriv(self, k: usize, t: f64) -> f64 {
        let shift = k as f64 * PI / 2.0;
        match self {
            NamedFunction::Sin => (t + shift).sin(),
            NamedFunction::Sin2 => (2.0f64).powi(k as i32) * (2.0 * t + shift).sin(),
            NamedFunction::Cos => (t + shift).cos(),
            NamedFunction::Square => match k {
                1 => 2.0 * t,
                2 => 2.0,
                _ => 0.0,
            },
            NamedFunction::ExpDecay => if k % 2 == 0 { (-t).exp() } else { -(-t).exp() },
            NamedFunction::Const => 0.0,
        }
    }

    /// Fundamental period for the periodic entries (used by mellin-witness).
    fn period(self) -> f64 {
        match self {
            NamedFunction::Sin2 => PI,
            _ => 2.0 * PI,
        }
    }

    fn sample(self, grid: TimeGrid, derivs: usize) -> SampledFunction {
        SampledFunction::from_fn_with_derivs(grid, |t| self.eval(t), derivs, |k, t| self.deriv(k, t))
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// JSON system description ("-" reads stdin); flags below override its fields
    #[arg(long)]
    input: Option<PathBuf>,
    /// System name: nn2, linear, forced_periodic, or constant
    #[arg(long)]
    system: Option<String>,
    /// System parameters, comma separated
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    /// Per-component derivative orders in (0, 1], comma separated
    #[arg(long, allow_hyphen_values = true)]
    order: Option<String>,
    /// Initial state, comma separated
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Integration end time
    #[arg(long)]
    t_end: Option<f64>,
    /// Grid step
    #[arg(long)]
    step: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ImpulsiveArgs {
    #[command(flatten)]
    base: SolveArgs,
    /// Impulse schedule period
    #[arg(long)]
    period: Option<f64>,
    /// Number of periods to integrate (alternative to --t-end)
    #[arg(long)]
    cycles: Option<usize>,
    /// Equidistant impulses per period (default 1, at the period end)
    #[arg(long)]
    impulses: Option<usize>,
    /// Impulse instants inside one period, comma separated, each in (0, period]
    #[arg(long, allow_hyphen_values = true)]
    impulse_times: Option<String>,
}

#[derive(Debug, Args)]
struct AnalyzePeriodArgs {
    /// Trajectory CSV with header t,x1,...,xp ("-" reads stdin)
    #[arg(long)]
    input: PathBuf,
    /// Candidate period; when omitted it is estimated by autocorrelation
    #[arg(long)]
    period: Option<f64>,
    /// 1-based component used for period estimation
    #[arg(long, default_value_t = 1)]
    component: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct MellinWitnessArgs {
    /// Fractional order alpha (non-integer, in (0, 2))
    #[arg(long)]
    alpha: f64,
    /// Periodic test function whose obstruction is sampled
    #[arg(long, value_enum, default_value_t = NamedFunction::Sin)]
    function: NamedFunction,
    /// Real-part window "lo,hi"; default sits inside (n - alpha, 1) with a margin
    #[arg(long, allow_hyphen_values = true)]
    strip_re: Option<String>,
    /// Largest |Im z| sampled
    #[arg(long, default_value_t = 5.0)]
    strip_im: f64,
    /// Samples along the real axis of the window
    #[arg(long, default_value_t = 5)]
    re_samples: usize,
    /// Samples along the imaginary axis of the window
    #[arg(long, default_value_t = 5)]
    im_samples: usize,
    /// Grid samples per period of the test function
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ReproduceFigureArgs {
    /// 1: Caputo derivative of sin vs cos; 2: two-neuron phase portrait;
    /// 3: the same two-neuron run as time series
    #[arg(long)]
    id: u8,
    /// Grid step override (default 0.01)
    #[arg(long)]
    step: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Parse the CLI and run the selected subcommand.
pub fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::MlEval(a) => ml_eval(a),
        Command::Deriv(a) => deriv(a),
        Command::Solve(a) => solve(a),
        Command::Impulsive(a) => impulsive(a),
        Command::AnalyzePeriod(a) => analyze_period(a),
        Command::MellinWitness(a) => mellin_witness(a),
        Command::ReproduceFigure(a) => reproduce_figure(a),
    }
}

/// Accepts "1.5", "re,im", and "re±imi" (e.g. "1+2i", "-0.5-3i", "2i").
fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    let bad = || Error::Config(format!("cannot parse '{s}' as a complex number; use forms like '1.5', '1+2i', or '0.5,-3'"));
    if let Ok(re) = s.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some((re, im)) = s.split_once(',') {
        let re = re.trim().parse::<f64>().map_err(|_| bad())?;
        let im = im.trim().parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // split at the last +/- that is not an exponent sign or leading sign
        let chars: Vec<char> = body.chars().collect();
        let mut split = None;
        for j in (1..chars.len()).rev() {
            if (chars[j] == '+' || chars[j] == '-')
                && chars[j - 1] != 'e'
                && chars[j - 1] != 'E'
            {
                split = Some(j);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(j) => (&body[..j], &body[j..]),
            None => ("0", body),
        };
        let re = if re_part.is_empty() { 0.0 } else { re_part.parse::<f64>().map_err(|_| bad())? };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|_| bad())?,
        };
        return Ok(Complex64::new(re, im));
    }
    Err(bad())
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim().parse::<f64>().map_err(|_| {
                Error::Config(format!("cannot parse '{p}' in {what}; expected comma-separated numbers"))
            })
        })
        .collect()
}

fn parse_order(alpha: f64) -> Result<FractionalOrder> {
    let order = if (alpha - alpha.round()).abs() < 1e-12 && alpha.round() >= 1.0 {
        FractionalOrder::integer_comparison(alpha.round() as u32)
    } else {
        FractionalOrder::new(alpha)
    };
    as_config(order)
}

/// Rejected command-line parameters are configuration errors (exit code 2)
/// even when the underlying check lives in a numeric routine.
fn as_config<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ (Error::Io(_) | Error::Json(_) | Error::Config(_)) => e,
        other => Error::Config(other.to_string()),
    })
}

#[derive(Serialize)]
struct ComplexParts {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexParts {
    fn from(z: Complex64) -> Self {
        ComplexParts { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct MlReport {
    alpha: f64,
    beta: f64,
    z: ComplexParts,
    value: ComplexParts,
}

fn ml_eval(a: MlEvalArgs) -> Result<()> {
    let p = as_config(MLParams::new(a.alpha, a.beta))?;
    let z = parse_complex(&a.z)?;
    let value = mittag_leffler(p, z)?;
    let mut w = a.output.writer()?;
    match a.output.format_or(Format::Json) {
        Format::Json => io::write_json(
            &mut w,
            &MlReport { alpha: a.alpha, beta: a.beta, z: z.into(), value: value.into() },
        ),
        Format::Csv => io::write_columns_csv(
            &mut w,
            &["alpha", "beta", "z_re", "z_im", "value_re", "value_im"],
            &[&[a.alpha], &[a.beta], &[z.re], &[z.im], &[value.re], &[value.im]],
        ),
    }
}

fn deriv(a: DerivArgs) -> Result<()> {
    let order = parse_order(a.order)?;
    let grid = as_config(TimeGrid::from_range(0.0, a.t_end, a.step))?;
    let g = a.function.sample(grid, order.n());

    let mut headers: Vec<&str> = vec!["t"];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    // The Riemann-Liouville derivative of a function with g(0) != 0 blows up
    // at the origin, so its table starts at t = h; align the others to it.
    let mut skip = 0usize;

    let wants = |k: DerivKind| a.kind == k || a.kind == DerivKind::All;
    let rl = if wants(DerivKind::RiemannLiouville) {
        let d = rl_derivative(&g, &order)?;
        if d.singular_at_origin {
            skip = 1;
        }
        Some(d)
    } else {
        None
    };
    let ts: Vec<f64> = g.grid.points()[skip..].to_vec();
    columns.push(ts);
    if wants(DerivKind::Caputo) {
        headers.push("caputo");
        columns.push(caputo_derivative(&g, &order)?.values[skip..].to_vec());
    }
    if let Some(d) = rl {
        headers.push("riemann_liouville");
        let vals = &d.samples.values;
        // d.samples already starts at t = h when singular; otherwise drop
        // the same number of leading rows as everyone else.
        let cut = if d.singular_at_origin { 0 } else { skip };
        columns.push(vals[cut..].to_vec());
    }
    if wants(DerivKind::GrunwaldLetnikov) {
        headers.push("grunwald_letnikov");
        columns.push(gl_derivative(&g, &order)?.values[skip..].to_vec());
    }

    let mut w = a.output.writer()?;
    match a.output.format_or(Format::Csv) {
        Format::Csv => {
            let cols: Vec<&[f64]> = columns.iter().map(|c| c.as_slice()).collect();
            io::write_columns_csv(&mut w, &headers, &cols)
        }
        Format::Json => {
            let table: serde_json::Map<String, serde_json::Value> = headers
                .iter()
                .zip(&columns)
                .map(|(h, c)| (h.to_string(), serde_json::json!(c)))
                .collect();
            io::write_json(&mut w, &table)
        }
    }
}

/// Build the run description from `--input` JSON (if any) with the
/// command-line flags overriding individual fields.
fn merged_spec(a: &SolveArgs) -> Result<SystemSpec> {
    let mut spec = match &a.input {
        Some(path) => SystemSpec::from_json(&io::read_input(path)?)?,
        None => {
            let name = a.system.clone().ok_or_else(|| {
                Error::Config("either --input or --system (with --order, --x0) is required".into())
            })?;
            SystemSpec {
                name,
                params: Vec::new(),
                orders: Vec::new(),
                x0: Vec::new(),
                t_end: None,
                h: 0.01,
                period: None,
                periods_to_run: None,
                impulse_times: None,
                impulses_per_period: None,
            }
        }
    };
    if let Some(name) = &a.system {
        spec.name = name.clone();
    }
    if let Some(params) = &a.params {
        spec.params = parse_list(params, "--params")?;
    }
    if let Some(orders) = &a.order {
        spec.orders = parse_list(orders, "--order")?;
    }
    if let Some(x0) = &a.x0 {
        spec.x0 = parse_list(x0, "--x0")?;
    }
    if let Some(t_end) = a.t_end {
        spec.t_end = Some(t_end);
    }
    if let Some(step) = a.step {
        spec.h = step;
    }
    Ok(spec)
}

fn write_trajectory(output: &OutputArgs, traj: &Trajectory) -> Result<()> {
    let mut w = output.writer()?;
    match output.format_or(Format::Csv) {
        Format::Csv => io::write_trajectory_csv(&mut w, traj),
        Format::Json => {
            #[derive(Serialize)]
            struct TrajectoryJson<'a> {
                t: Vec<f64>,
                states: Vec<&'a [f64]>,
                jumps: &'a [crate::grid::Jump],
            }
            let view = TrajectoryJson {
                t: traj.grid.points(),
                states: (0..traj.grid.len()).map(|j| traj.state(j)).collect(),
                jumps: &traj.jumps,
            };
            io::write_json(&mut w, &view)
        }
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    let spec = merged_spec(&a)?;
    spec.validate()?;
    let system = spec.build()?;
    let grid = TimeGrid::from_range(0.0, spec.total_time(), spec.h)?;
    let traj = solve_caputo(&system, &spec.orders, &spec.x0, &grid, &SolveOptions::default())?;
    write_trajectory(&a.output, &traj)
}

fn impulsive(a: ImpulsiveArgs) -> Result<()> {
    let mut spec = merged_spec(&a.base)?;
    if let Some(period) = a.period {
        spec.period = Some(period);
    }
    if let Some(cycles) = a.cycles {
        spec.periods_to_run = Some(cycles);
    }
    if let Some(impulses) = a.impulses {
        spec.impulses_per_period = Some(impulses);
    }
    if let Some(times) = &a.impulse_times {
        spec.impulse_times = Some(parse_list(times, "--impulse-times")?);
    }
    spec.validate()?;
    let system = spec.build()?;
    let schedule = ImpulseSchedule::from_spec(&spec)?;
    let traj = solve_impulsive(
        &system,
        &spec.orders,
        &spec.x0,
        &schedule,
        spec.total_time(),
        spec.h,
        &SolveOptions::default(),
    )?;
    write_trajectory(&a.base.output, &traj)
}

#[derive(Serialize)]
struct PeriodAnalysis {
    /// Present when the period was estimated rather than supplied.
    estimate: Option<PeriodEstimate>,
    periodicity: PeriodicityReport,
}

fn analyze_period(a: AnalyzePeriodArgs) -> Result<()> {
    let (traj, _) = io::read_trajectory_csv(io::input_reader(&a.input)?)?;
    let (estimate, period) = match a.period {
        Some(p) => (None, p),
        None => {
            if a.component == 0 || a.component > traj.dim {
                return Err(Error::Config(format!(
                    "--component must be in 1..={}, got {}",
                    traj.dim, a.component
                )));
            }
            let series = traj.component(a.component - 1);
            let est = estimate_period(&series, traj.grid.h())?;
            // snap to a whole number of grid steps: the cycle comparison is
            // sample-for-sample
            let steps = (est.period / traj.grid.h()).round().max(1.0);
            let period = steps * traj.grid.h();
            (Some(est), period)
        }
    };
    let periodicity = trajectory_periodicity(&traj, period)?;
    let report = PeriodAnalysis { estimate, periodicity };
    let mut w = a.output.writer()?;
    match a.output.format_or(Format::Json) {
        Format::Json => io::write_json(&mut w, &report),
        Format::Csv => {
            let cycles: Vec<f64> = (1..=report.periodicity.cycle_residuals.len())
                .map(|k| k as f64)
                .collect();
            io::write_columns_csv(
                &mut w,
                &["cycle", "residual"],
                &[cycles.as_slice(), report.periodicity.cycle_residuals.as_slice()],
            )
        }
    }
}

fn mellin_witness(a: MellinWitnessArgs) -> Result<()> {
    let order = as_config(FractionalOrder::new(a.alpha))?;
    let strip = match &a.strip_re {
        Some(text) => {
            let ends = parse_list(text, "--strip-re")?;
            if ends.len() != 2 {
                return Err(Error::Config(format!(
                    "--strip-re wants exactly 'lo,hi', got {} numbers",
                    ends.len()
                )));
            }
            as_config(StripWindow::new(ends[0], ends[1], a.re_samples, a.strip_im, a.im_samples))?
        }
        None => {
            let d = as_config(StripWindow::obstruction_default(a.alpha))?;
            as_config(StripWindow::new(d.re_min, d.re_max, a.re_samples, a.strip_im, a.im_samples))?
        }
    };
    let lo = order.n() as f64 - a.alpha;
    if strip.re_min <= lo || strip.re_max >= 1.0 {
        return Err(Error::Config(format!(
            "--strip-re window ({}, {}) must sit strictly inside ({lo}, 1) for alpha = {}",
            strip.re_min, strip.re_max, a.alpha
        )));
    }
    if a.samples < 8 {
        return Err(Error::Config(format!(
            "--samples must be at least 8 per period, got {}",
            a.samples
        )));
    }
    let grid = TimeGrid::for_period(a.function.period(), a.samples, 1)?;
    let x = a.function.sample(grid, order.n());
    let report: WitnessReport = proof_witness(&x, a.alpha, &strip)?;
    let mut w = a.output.writer()?;
    match a.output.format_or(Format::Json) {
        Format::Json => io::write_json(&mut w, &report),
        Format::Csv => {
            let re: Vec<f64> = report.samples.iter().map(|s| s.re).collect();
            let im: Vec<f64> = report.samples.iter().map(|s| s.im).collect();
            let abs_h: Vec<f64> = report.samples.iter().map(|s| s.abs_h).collect();
            let abs_g: Vec<f64> = report.samples.iter().map(|s| s.abs_g).collect();
            io::write_columns_csv(
                &mut w,
                &["re", "im", "abs_h", "abs_g"],
                &[re.as_slice(), im.as_slice(), abs_h.as_slice(), abs_g.as_slice()],
            )
        }
    }
}

fn nn2_reference_run(h: f64) -> Result<Trajectory> {
    let spec = SystemSpec {
        name: "nn2".into(),
        params: Vec::new(),
        orders: vec![0.5, 0.5],
        x0: vec![0.1, 0.1],
        t_end: Some(200.0),
        h,
        period: None,
        periods_to_run: None,
        impulse_times: None,
        impulses_per_period: None,
    };
    let system = spec.build()?;
    let grid = TimeGrid::from_range(0.0, 200.0, h)?;
    solve_caputo(&system, &spec.orders, &spec.x0, &grid, &SolveOptions::default())
}

fn reproduce_figure(a: ReproduceFigureArgs) -> Result<()> {
    let h = a.step.unwrap_or(0.01);
    match a.id {
        1 => {
            // classical derivative of sin (= cos) against its Caputo
            // half-derivative: the two separate instead of staying in phase
            let grid = TimeGrid::from_range(0.0, 40.0, h)?;
            let ts: Vec<f64> = grid.points()[1..].to_vec();
            let cos_t: Vec<f64> = ts.iter().map(|&t| t.cos()).collect();
            let mut half: Vec<f64> = Vec::with_capacity(ts.len());
            for &t in &ts {
                half.push(caputo_sin_closed_form(0.5, t)?);
            }
            let mut w = a.output.writer()?;
            match a.output.format_or(Format::Csv) {
                Format::Csv => io::write_columns_csv(
                    &mut w,
                    &["t", "cos_t", "caputo_sin_alpha05"],
                    &[ts.as_slice(), cos_t.as_slice(), half.as_slice()],
                )?,
                Format::Json => io::write_json(
                    &mut w,
                    &serde_json::json!({ "t": ts, "cos_t": cos_t, "caputo_sin_alpha05": half }),
                )?,
            }
        }
        2 | 3 => {
            // id 2 is meant for a phase-plane plot (x1 against x2), id 3 for
            // the same components against time; the data set is identical
            let traj = nn2_reference_run(h)?;
            write_trajectory(&a.output, &traj)?;
        }
        other => {
            return Err(Error::Config(format!("unknown figure id {other}; available ids: 1, 2, 3")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_line_grammar_is_self_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn complex_arguments_parse_in_all_supported_forms() {
        let cases = [
            ("1.5", Complex64::new(1.5, 0.0)),
            ("-2", Complex64::new(-2.0, 0.0)),
            ("1+2i", Complex64::new(1.0, 2.0)),
            ("-0.5-3i", Complex64::new(-0.5, -3.0)),
            ("2i", Complex64::new(0.0, 2.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("1e-3+2e2i", Complex64::new(1e-3, 2e2)),
            ("0.5,-3", Complex64::new(0.5, -3.0)),
        ];
        for (text, want) in cases {
            let got = parse_complex(text).unwrap();
            assert_eq!(got, want, "parsing {text}");
        }
        assert!(parse_complex("apple").is_err());
        assert!(parse_complex("1+2j").is_err());
    }

    #[test]
    fn spec_merging_lets_flags_override_json_fields() {
        let json = r#"{"name":"constant","params":[1.0],"orders":[0.5],"x0":[0.0],"t_end":1.0,"h":0.1}"#;
        let dir = std::env::temp_dir().join(format!("fracdyn-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("spec.json");
        std::fs::write(&path, json).unwrap();
        let args = SolveArgs {
            input: Some(path.clone()),
            system: None,
            params: None,
            order: Some("0.8".into()),
            x0: None,
            t_end: Some(2.0),
            step: None,
            output: OutputArgs { out: None, format: None },
        };
        let spec = merged_spec(&args).unwrap();
        assert_eq!(spec.name, "constant");
        assert_eq!(spec.orders, vec![0.8]);
        assert_eq!(spec.t_end, Some(2.0));
        assert_eq!(spec.h, 0.1);
        std::fs::remove_file(&path).ok();
    }
}
