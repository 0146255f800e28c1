//! Crate-wide error type.
//!
//! Numeric routines report *why* they could not certify a result rather than
//! silently returning garbage: poles, non-convergent series, grids that do not
//! cover the requested interval, and so on. [`Error::exit_code`] maps each
//! category onto the process exit codes used by the `fracdyn` binary
//! (2 = configuration, 3 = numerical failure, 4 = I/O).

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Gamma evaluated at a non-positive integer.
    #[error("gamma pole: z = {re}{im:+}i is a non-positive integer")]
    GammaPole { re: f64, im: f64 },

    /// A series or adaptive quadrature could not certify the requested tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Re(z) outside the fundamental strip of a Mellin transform.
    #[error("strip violation: Re(z) = {re} outside ({lo}, {hi})")]
    StripViolation { re: f64, lo: f64, hi: f64 },

    /// Right-hand side name not present in the registry.
    #[error("unknown system '{0}'")]
    UnknownSystem(String),

    /// Too few samples to run the requested stencil or analysis.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    /// Trajectory left the configured bound (or went non-finite).
    #[error("solution diverged at t = {t}: |x| exceeded {bound}")]
    Divergence { t: f64, bound: f64 },

    /// Data does not cover the interval an operation needs.
    #[error("coverage error: {0}")]
    Coverage(String),

    /// Period estimation found no usable oscillation.
    #[error("no oscillation detected: {0}")]
    NoOscillation(String),

    /// Impulse schedule violates its structural invariants.
    #[error("invalid impulse schedule: {0}")]
    Schedule(String),

    /// Malformed run configuration (CLI flags or JSON document).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config, 3 numeric, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Schedule(_) | Error::UnknownSystem(_) | Error::Json(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}
