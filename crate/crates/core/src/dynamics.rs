//! Mean-field equations of motion for the collective excitation amplitudes.
//!
//! In the frame rotating with the two-photon detuning Δ = Δp − Δc the
//! noise-averaged amplitudes obey the linear system
//!
//! ```text
//! d⟨A⟩/dt  = −(Γ_A − iΔp)⟨A⟩ − i·g√N·⟨a⟩ − iΩ(t)·⟨C̃⟩
//! d⟨C̃⟩/dt = −(Γ_C − iΔ)·⟨C̃⟩ − iΩ(t)·⟨A⟩
//! ```
//!
//! with the probe amplitude ⟨a⟩ a constant c-number (undepleted probe) and
//! the quantum noise terms dropped since their averages vanish. The module
//! provides the closed-form steady state, a fixed-step 4th-order integrator
//! for cross-checks and time-dependent control schedules, and the adiabatic
//! storage ramp demonstration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{DetuningPoint, ModelParams};
use crate::suscept::{group_velocity_resonant, DerivativeMode};

/// Integrator blow-up threshold on any state component.
const BLOWUP: f64 = 1e12;

/// Complex amplitudes of the two collective excitations at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState {
    /// ⟨A⟩, the optical excitation amplitude.
    pub exc_a: Complex64,
    /// ⟨C̃⟩, the spin excitation amplitude in the rotating frame.
    pub exc_c_tilde: Complex64,
    pub time: f64,
}

impl MeanFieldState {
    pub fn zero() -> Self {
        Self {
            exc_a: Complex64::ZERO,
            exc_c_tilde: Complex64::ZERO,
            time: 0.0,
        }
    }

    fn norm(&self) -> f64 {
        (self.exc_a.norm_sqr() + self.exc_c_tilde.norm_sqr()).sqrt()
    }
}

/// Control-field Rabi frequency as a function of time.
#[derive(Debug, Clone, PartialEq)]
pub enum RabiSchedule {
    Constant(f64),
    /// Linear interpolation between knots (t_k, Ω_k); constant beyond the
    /// first and last knot.
    PiecewiseLinear(Vec<(f64, f64)>),
}

impl RabiSchedule {
    /// Single linear ramp from (t0, rabi0) to (t1, rabi1).
    pub fn ramp(t0: f64, rabi0: f64, t1: f64, rabi1: f64) -> Result<Self> {
        Self::piecewise(vec![(t0, rabi0), (t1, rabi1)])
    }

    pub fn piecewise(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidSchedule(
                "piecewise schedule needs at least two knots".into(),
            ));
        }
        for pair in knots.windows(2) {
            if !(pair[1].0 > pair[0].0) {
                return Err(Error::InvalidSchedule(format!(
                    "knot times must be strictly increasing, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if let Some(&(t, rabi)) = knots.iter().find(|&&(t, r)| !t.is_finite() || !(r >= 0.0)) {
            return Err(Error::InvalidSchedule(format!(
                "knot ({t}, {rabi}) must have finite time and rabi >= 0"
            )));
        }
        Ok(Self::PiecewiseLinear(knots))
    }

    pub fn rabi_at(&self, t: f64) -> f64 {
        match self {
            Self::Constant(rabi) => *rabi,
            Self::PiecewiseLinear(knots) => {
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if t <= first.0 {
                    return first.1;
                }
                if t >= last.0 {
                    return last.1;
                }
                let k = knots.partition_point(|&(tk, _)| tk <= t);
                let (t0, r0) = knots[k - 1];
                let (t1, r1) = knots[k];
                r0 + (r1 - r0) * (t - t0) / (t1 - t0)
            }
        }
    }

    pub fn max_rabi(&self) -> f64 {
        match self {
            Self::Constant(rabi) => *rabi,
            Self::PiecewiseLinear(knots) => knots.iter().map(|&(_, r)| r).fold(0.0, f64::max),
        }
    }

    /// Knot-time span of a piecewise schedule.
    pub fn domain(&self) -> Option<(f64, f64)> {
        match self {
            Self::Constant(_) => None,
            Self::PiecewiseLinear(knots) => Some((knots[0].0, knots[knots.len() - 1].0)),
        }
    }
}

/// Probe drive and control schedule for an integration run.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveSpec {
    /// Constant c-number probe amplitude ⟨a⟩.
    pub probe_amp: Complex64,
    pub rabi: RabiSchedule,
}

impl DriveSpec {
    pub fn constant(probe_amp: Complex64, rabi: f64) -> Self {
        Self {
            probe_amp,
            rabi: RabiSchedule::Constant(rabi),
        }
    }
}

/// Steady-state amplitudes with the norm of the residual time-derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub exc_a: Complex64,
    pub exc_c_tilde: Complex64,
    pub residual: f64,
}

/// Right-hand side of the transformed equations of motion at time `t`.
pub fn mean_field_rhs(
    state: &MeanFieldState,
    pt: DetuningPoint,
    params: &ModelParams,
    drive: &DriveSpec,
    t: f64,
) -> (Complex64, Complex64) {
    let rabi = drive.rabi.rabi_at(t);
    rhs_raw(
        state.exc_a,
        state.exc_c_tilde,
        pt,
        params,
        drive.probe_amp,
        rabi,
    )
}

fn rhs_raw(
    a: Complex64,
    c: Complex64,
    pt: DetuningPoint,
    params: &ModelParams,
    probe_amp: Complex64,
    rabi: f64,
) -> (Complex64, Complex64) {
    let i = Complex64::I;
    let da = -Complex64::new(params.gamma_a, -pt.delta_p) * a
        - i * params.g_root_n * probe_amp
        - i * rabi * c;
    let dc = -Complex64::new(params.gamma_c, -pt.delta()) * c - i * rabi * a;
    (da, dc)
}

/// Closed-form steady state of the constant-drive system:
///
/// ```text
/// ⟨A⟩ = −i·g√N·(Γ_C − iΔ)·⟨a⟩ / [ (Γ_A − iΔp)(Γ_C − iΔ) + Ω² ]
/// ```
///
/// with ⟨C̃⟩ from the C̃ equation where Γ_C − iΔ ≠ 0, and from the A equation
/// otherwise (dark-state limit).
pub fn steady_state(
    pt: DetuningPoint,
    params: &ModelParams,
    probe_amp: Complex64,
) -> Result<SteadyState> {
    params.validate()?;
    pt.validate(params)?;
    let i = Complex64::I;
    let rabi = params.rabi;
    let gc_minus_idelta = Complex64::new(params.gamma_c, -pt.delta());
    let den = Complex64::new(params.gamma_a, -pt.delta_p) * gc_minus_idelta + rabi * rabi;
    if den.norm() < 1e-300 {
        return Err(Error::DegenerateDenominator {
            delta_p: pt.delta_p,
            delta_c: pt.delta_c,
            magnitude: den.norm(),
        });
    }
    let exc_a = -i * params.g_root_n * gc_minus_idelta * probe_amp / den;
    let exc_c_tilde = if gc_minus_idelta.norm() > 1e-300 {
        -i * rabi * exc_a / gc_minus_idelta
    } else {
        // Γ_C − iΔ = 0 with a nonzero denominator implies Ω > 0.
        (-Complex64::new(params.gamma_a, -pt.delta_p) * exc_a - i * params.g_root_n * probe_amp)
            / (i * rabi)
    };
    let (da, dc) = rhs_raw(exc_a, exc_c_tilde, pt, params, probe_amp, rabi);
    let residual = (da.norm_sqr() + dc.norm_sqr()).sqrt();
    Ok(SteadyState {
        exc_a,
        exc_c_tilde,
        residual,
    })
}

fn rk4_step(
    a: Complex64,
    c: Complex64,
    t: f64,
    dt: f64,
    pt: DetuningPoint,
    params: &ModelParams,
    probe_amp: Complex64,
    rabi: &RabiSchedule,
) -> (Complex64, Complex64) {
    let f = |a, c, t: f64| rhs_raw(a, c, pt, params, probe_amp, rabi.rabi_at(t));
    let (k1a, k1c) = f(a, c, t);
    let (k2a, k2c) = f(a + 0.5 * dt * k1a, c + 0.5 * dt * k1c, t + 0.5 * dt);
    let (k3a, k3c) = f(a + 0.5 * dt * k2a, c + 0.5 * dt * k2c, t + 0.5 * dt);
    let (k4a, k4c) = f(a + dt * k3a, c + dt * k3c, t + dt);
    (
        a + dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a),
        c + dt / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c),
    )
}

/// Maximum stable step for the explicit integrator.
fn step_guard(pt: DetuningPoint, params: &ModelParams, drive: &DriveSpec) -> f64 {
    let rate = params
        .gamma_a
        .max(drive.rabi.max_rabi())
        .max(pt.delta_p.abs())
        .max(pt.delta().abs());
    0.1 / rate
}

/// Integrate the mean-field equations with a classical fixed-step 4th-order
/// scheme. The trajectory is sampled every `sample_stride` steps (the initial
/// and final states are always included).
pub fn integrate(
    initial: MeanFieldState,
    pt: DetuningPoint,
    params: &ModelParams,
    drive: &DriveSpec,
    t_end: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<Vec<MeanFieldState>> {
    params.validate()?;
    pt.validate(params)?;
    if !(t_end > initial.time) {
        return Err(Error::InvalidParams(format!(
            "t_end = {t_end} must exceed the initial time {}",
            initial.time
        )));
    }
    let guard = step_guard(pt, params, drive);
    if !(dt > 0.0) || dt > guard {
        return Err(Error::StepTooLarge {
            step: dt,
            max: guard,
        });
    }
    let stride = sample_stride.max(1);
    let span = t_end - initial.time;
    let n_steps = (span / dt).ceil().max(1.0) as usize;
    let dt = span / n_steps as f64;

    let mut out = Vec::with_capacity(n_steps / stride + 2);
    out.push(initial);
    let (mut a, mut c) = (initial.exc_a, initial.exc_c_tilde);
    for k in 0..n_steps {
        let t = initial.time + k as f64 * dt;
        (a, c) = rk4_step(a, c, t, dt, pt, params, drive.probe_amp, &drive.rabi);
        let state = MeanFieldState {
            exc_a: a,
            exc_c_tilde: c,
            time: initial.time + (k + 1) as f64 * dt,
        };
        if state.norm() > BLOWUP {
            return Err(Error::UnstableStep { time: state.time });
        }
        if (k + 1) % stride == 0 || k + 1 == n_steps {
            out.push(state);
        }
    }
    Ok(out)
}

/// One sampled row of a storage-ramp run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StorageSample {
    pub time: f64,
    /// Instantaneous control Rabi frequency Ω(t).
    pub rabi: f64,
    /// Group velocity at the instantaneous Ω(t), on the resonance line.
    pub vg_over_c: f64,
    pub abs_a: f64,
    pub abs_c_tilde: f64,
}

/// Drive the system through a control-field ramp at two-photon resonance
/// (Δp = Δc) and report, at `n_samples` uniformly spaced times across the
/// schedule's knot span, the instantaneous Ω, the group velocity the medium
/// would impose at that Ω, and the excitation magnitudes.
///
/// The run starts from the steady state at the initial Ω. Adiabaticity is not
/// enforced; fast ramps simply show the excitation lagging the dark state.
pub fn storage_ramp(
    params: &ModelParams,
    delta_c: f64,
    drive: &DriveSpec,
    n_samples: usize,
) -> Result<Vec<StorageSample>> {
    params.validate()?;
    let (t_start, t_stop) = drive.rabi.domain().ok_or_else(|| {
        Error::InvalidSchedule("storage ramp requires a piecewise-linear schedule".into())
    })?;
    if n_samples < 2 {
        return Err(Error::InvalidParams(
            "storage ramp needs at least two samples".into(),
        ));
    }
    let pt = DetuningPoint::resonant(delta_c);
    pt.validate(params)?;

    let initial_rabi = drive.rabi.rabi_at(t_start);
    let ss = steady_state(pt, &params.with_rabi(initial_rabi), drive.probe_amp)?;
    let mut state = MeanFieldState {
        exc_a: ss.exc_a,
        exc_c_tilde: ss.exc_c_tilde,
        time: t_start,
    };

    let dt_max = 0.5 * step_guard(pt, params, drive);
    let mut out = Vec::with_capacity(n_samples);
    for k in 0..n_samples {
        let t_k = t_start + (t_stop - t_start) * k as f64 / (n_samples - 1) as f64;
        if t_k > state.time {
            let n_sub = ((t_k - state.time) / dt_max).ceil().max(1.0) as usize;
            let dt = (t_k - state.time) / n_sub as f64;
            let (mut a, mut c) = (state.exc_a, state.exc_c_tilde);
            for j in 0..n_sub {
                let t = state.time + j as f64 * dt;
                (a, c) = rk4_step(a, c, t, dt, pt, params, drive.probe_amp, &drive.rabi);
            }
            state = MeanFieldState {
                exc_a: a,
                exc_c_tilde: c,
                time: t_k,
            };
            if state.norm() > BLOWUP {
                return Err(Error::UnstableStep { time: state.time });
            }
        }
        let rabi = drive.rabi.rabi_at(t_k);
        let vg =
            group_velocity_resonant(delta_c, &params.with_rabi(rabi), DerivativeMode::Analytic)?;
        out.push(StorageSample {
            time: t_k,
            rabi,
            vg_over_c: vg.vg_over_c,
            abs_a: state.exc_a.norm(),
            abs_c_tilde: state.exc_c_tilde.norm(),
        });
    }
    Ok(out)
}
