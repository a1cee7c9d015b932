//! Physical parameters of the medium and the detunings of the two fields.
//!
//! All rates are in normalized units (Γ_A is the unit rate) and the vacuum
//! light speed is 1, so group velocities are reported as vg/c.

use crate::error::{Error, Result};

/// Canonical parameter set used throughout: Γ_A = 1, Γ_C = 1e-4,
/// g√N = 100, ω_ab = 1e6.
pub const CANONICAL_GAMMA_A: f64 = 1.0;
pub const CANONICAL_GAMMA_C: f64 = 1e-4;
pub const CANONICAL_G_ROOT_N: f64 = 100.0;
pub const CANONICAL_OMEGA_AB: f64 = 1e6;

/// Constants of the medium and the driving fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Decay rate Γ_A of the excited state |a⟩.
    pub gamma_a: f64,
    /// Decay rate Γ_C of the final state |c⟩.
    pub gamma_c: f64,
    /// Collective coupling strength g√N between probe and ensemble.
    pub g_root_n: f64,
    /// Atomic transition frequency ω_ab.
    pub omega_ab: f64,
    /// Control-field Rabi frequency Ω.
    pub rabi: f64,
    /// Vacuum light speed; fixed to 1 in normalized units.
    pub c_light: f64,
}

impl ModelParams {
    pub fn new(
        gamma_a: f64,
        gamma_c: f64,
        g_root_n: f64,
        omega_ab: f64,
        rabi: f64,
    ) -> Result<Self> {
        let params = Self {
            gamma_a,
            gamma_c,
            g_root_n,
            omega_ab,
            rabi,
            c_light: 1.0,
        };
        params.validate()?;
        Ok(params)
    }

    /// The canonical parameter set with Ω = 0.5.
    pub fn canonical() -> Self {
        Self {
            gamma_a: CANONICAL_GAMMA_A,
            gamma_c: CANONICAL_GAMMA_C,
            g_root_n: CANONICAL_G_ROOT_N,
            omega_ab: CANONICAL_OMEGA_AB,
            rabi: 0.5,
            c_light: 1.0,
        }
    }

    pub fn with_rabi(mut self, rabi: f64) -> Self {
        self.rabi = rabi;
        self
    }

    pub fn with_g_root_n(mut self, g_root_n: f64) -> Self {
        self.g_root_n = g_root_n;
        self
    }

    pub fn with_gamma_c(mut self, gamma_c: f64) -> Self {
        self.gamma_c = gamma_c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParams(msg.to_string()))
            }
        };
        check(
            self.gamma_a.is_finite() && self.gamma_a > 0.0,
            "gamma_a must be finite and > 0",
        )?;
        check(
            self.gamma_c.is_finite() && self.gamma_c >= 0.0,
            "gamma_c must be finite and >= 0",
        )?;
        check(
            self.g_root_n.is_finite() && self.g_root_n > 0.0,
            "g_root_n must be finite and > 0",
        )?;
        check(
            self.omega_ab.is_finite() && self.omega_ab > 0.0,
            "omega_ab must be finite and > 0",
        )?;
        check(
            self.rabi.is_finite() && self.rabi >= 0.0,
            "rabi must be finite and >= 0",
        )?;
        check(
            self.c_light.is_finite() && self.c_light > 0.0,
            "c_light must be finite and > 0",
        )?;
        Ok(())
    }

    /// Non-fatal warning when ω_ab is not large against every other rate, in
    /// which case the rotating-wave premises of the model weaken.
    pub fn rotating_wave_warning(&self) -> Option<String> {
        let fastest = self.gamma_a.max(self.rabi).max(self.g_root_n);
        if self.omega_ab < 100.0 * fastest {
            Some(format!(
                "omega_ab = {} is less than 100x the fastest rate ({}); \
                 the rotating-wave description is marginal",
                self.omega_ab, fastest
            ))
        } else {
            None
        }
    }
}

/// Probe and control detunings. The two-photon detuning Δ = Δp − Δc and the
/// probe frequency ω = ω_ab + Δp are derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningPoint {
    /// Probe detuning Δp = ω − ω_ab.
    pub delta_p: f64,
    /// Control detuning Δc = ν − ω_ac.
    pub delta_c: f64,
}

impl DetuningPoint {
    pub fn new(delta_p: f64, delta_c: f64) -> Self {
        Self { delta_p, delta_c }
    }

    /// A point on the two-photon-resonance line Δp = Δc.
    pub fn resonant(delta_c: f64) -> Self {
        Self {
            delta_p: delta_c,
            delta_c,
        }
    }

    /// Two-photon detuning Δ = Δp − Δc.
    pub fn delta(&self) -> f64 {
        self.delta_p - self.delta_c
    }

    /// Probe frequency ω = ω_ab + Δp.
    pub fn omega(&self, params: &ModelParams) -> f64 {
        params.omega_ab + self.delta_p
    }

    /// Rejects points with non-finite detunings or ω ≤ 0.
    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        if !self.delta_p.is_finite() || !self.delta_c.is_finite() {
            return Err(Error::InvalidDetuning("detunings must be finite".into()));
        }
        let omega = self.omega(params);
        if omega <= 0.0 {
            return Err(Error::InvalidDetuning(format!(
                "probe frequency omega = omega_ab + delta_p = {omega} must be > 0"
            )));
        }
        Ok(())
    }
}
