use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid detuning point: {0}")]
    InvalidDetuning(String),

    #[error("invalid Rabi schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// The linear-response denominator (Γ_A − iΔp)(Γ_C − iΔ) + Ω² vanished.
    #[error(
        "degenerate response denominator (|den| = {magnitude:e}) at \
         delta_p = {delta_p}, delta_c = {delta_c}"
    )]
    DegenerateDenominator {
        delta_p: f64,
        delta_c: f64,
        magnitude: f64,
    },

    /// A finite-difference or integrator step exceeded its stability guard.
    #[error("step {step:e} exceeds the stability guard {max:e}")]
    StepTooLarge { step: f64, max: f64 },

    /// n₁ + ω·dn₁/dω ≤ 0: anomalous dispersion outside the model's regime.
    #[error(
        "non-positive group-velocity denominator ({value:e}) at \
         delta_p = {delta_p}, delta_c = {delta_c}"
    )]
    NonPositiveDenominator {
        delta_p: f64,
        delta_c: f64,
        value: f64,
    },

    /// Integrator blow-up: a state component exceeded 1e12.
    #[error("integration diverged at t = {time}")]
    UnstableStep { time: f64 },

    #[error("atom count {n} exceeds the supported maximum {max}")]
    DimensionOverflow { n: usize, max: usize },

    #[error("operator dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
