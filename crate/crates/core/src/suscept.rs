//! Closed-form linear susceptibility, refractive index, and group velocity of
//! the probe field.
//!
//! The complex susceptibility of the driven ensemble is
//!
//! ```text
//! χ = 2i (g√N)² (Γ_C − iΔ) / { ω [ (Γ_A − iΔp)(Γ_C − iΔ) + Ω² ] },   Δ = Δp − Δc,
//! ```
//!
//! with ω = ω_ab + Δp the probe frequency. Its real/imaginary decomposition
//! uses the intermediates
//!
//! ```text
//! Θ = Γ_A Γ_C − Δp·Δ + Ω²,    Ξ = Δp·Γ_C + Γ_A·Δ,    F = 2 (g√N)² / ω,
//! χ₁ = (Δ·Θ − Γ_C·Ξ)·F / (Θ² + Ξ²),    χ₂ = (Γ_C·Θ + Δ·Ξ)·F / (Θ² + Ξ²).
//! ```
//!
//! Note the Ξ used here is the expansion of the complex denominator
//! (Θ − iΞ = (Γ_A − iΔp)(Γ_C − iΔ) + Ω²); any other choice fails the
//! decomposition-consistency test against the complex form.
//!
//! The group velocity follows from the frequency dispersion of the real
//! refractive index, vg/c = 1/(n₁ + ω·dn₁/dω), with the derivative taken at
//! fixed control detuning so that Δp = ω − ω_ab varies with ω. On the
//! two-photon-resonance line Δp = Δc, where n₁ ≃ 1 + χ₁/2, this reduces to
//! vg/c = 1/(1 + (ω/2)·dχ₁/dω).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{DetuningPoint, ModelParams};

/// Below this magnitude the response denominator counts as degenerate.
const DEGENERATE_DENOMINATOR: f64 = 1e-300;

/// Susceptibility at one parameter point, decomposed as χ = χ₁ + iχ₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibility {
    /// Dispersion part χ₁.
    pub chi1: f64,
    /// Absorption part χ₂.
    pub chi2: f64,
    /// Denominator intermediate Θ.
    pub theta: f64,
    /// Denominator intermediate Ξ.
    pub xi: f64,
    /// Prefactor F = 2(g√N)²/ω.
    pub f_const: f64,
}

impl Susceptibility {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.chi1, self.chi2)
    }
}

/// Complex refractive index n = n₁ + i·n₂ with n² = 1 + χ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractiveIndex {
    /// Real refractive index.
    pub n1: f64,
    /// Absorption coefficient part, sharing the sign of χ₂.
    pub n2: f64,
}

impl RefractiveIndex {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.n1, self.n2)
    }
}

/// Which group-velocity formula produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VgMethod {
    /// Full formula vg/c = 1/(n₁ + ω·dn₁/dω), valid at any detuning.
    General,
    /// Two-photon-resonant reduction vg/c = 1/(1 + (ω/2)·dχ₁/dω).
    Resonant,
}

/// How frequency derivatives are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    /// Exact chain rule through Θ(Δp), Ξ(Δp) and F(ω).
    Analytic,
    /// Central difference with step `h` (guarded against stepping across the
    /// transparency window).
    FiniteDifference { h: f64 },
}

/// Group velocity as a fraction of c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupVelocity {
    pub vg_over_c: f64,
    pub method: VgMethod,
    pub derivative_mode: DerivativeMode,
}

/// Denominator intermediates Θ and Ξ. Total on valid inputs.
pub fn theta_xi(pt: DetuningPoint, params: &ModelParams) -> (f64, f64) {
    let delta = pt.delta();
    let theta = params.gamma_a * params.gamma_c - pt.delta_p * delta + params.rabi * params.rabi;
    let xi = pt.delta_p * params.gamma_c + params.gamma_a * delta;
    (theta, xi)
}

/// Direct complex evaluation of the susceptibility.
pub fn chi_complex(pt: DetuningPoint, params: &ModelParams) -> Result<Complex64> {
    params.validate()?;
    pt.validate(params)?;
    let delta = pt.delta();
    let omega = pt.omega(params);
    let gc_minus_idelta = Complex64::new(params.gamma_c, -delta);
    let den =
        Complex64::new(params.gamma_a, -pt.delta_p) * gc_minus_idelta + params.rabi * params.rabi;
    if den.norm() < DEGENERATE_DENOMINATOR {
        return Err(Error::DegenerateDenominator {
            delta_p: pt.delta_p,
            delta_c: pt.delta_c,
            magnitude: den.norm(),
        });
    }
    let g2n = params.g_root_n * params.g_root_n;
    Ok(Complex64::new(0.0, 2.0 * g2n) * gc_minus_idelta / (omega * den))
}

/// Susceptibility via the explicit real decomposition through Θ and Ξ.
pub fn chi_parts(pt: DetuningPoint, params: &ModelParams) -> Result<Susceptibility> {
    params.validate()?;
    pt.validate(params)?;
    let delta = pt.delta();
    let omega = pt.omega(params);
    let (theta, xi) = theta_xi(pt, params);
    let den = theta * theta + xi * xi;
    if den.sqrt() < DEGENERATE_DENOMINATOR {
        return Err(Error::DegenerateDenominator {
            delta_p: pt.delta_p,
            delta_c: pt.delta_c,
            magnitude: den.sqrt(),
        });
    }
    let f_const = 2.0 * params.g_root_n * params.g_root_n / omega;
    let chi1 = (delta * theta - params.gamma_c * xi) * f_const / den;
    let chi2 = (params.gamma_c * theta + delta * xi) * f_const / den;
    Ok(Susceptibility {
        chi1,
        chi2,
        theta,
        xi,
        f_const,
    })
}

/// Complex refractive index from the closed forms
///
/// ```text
/// n₁ = √{ [((1+χ₁)² + χ₂²)^½ + (1+χ₁)] / 2 },
/// n₂ = √{ [((1+χ₁)² + χ₂²)^½ − (1+χ₁)] / 2 } · sgn(χ₂),
/// ```
///
/// which pick the principal root of n² = 1 + χ with the sign of n₂ tied to
/// the sign of χ₂.
pub fn refractive_index(chi: Complex64) -> RefractiveIndex {
    let x = 1.0 + chi.re;
    let r = x.hypot(chi.im);
    let n1 = ((r + x) / 2.0).max(0.0).sqrt();
    let sgn = if chi.im < 0.0 { -1.0 } else { 1.0 };
    let n2 = ((r - x) / 2.0).max(0.0).sqrt() * sgn;
    RefractiveIndex { n1, n2 }
}

/// Analytic (dχ₁/dω, dχ₂/dω) at fixed Δc; Δp = ω − ω_ab varies with ω.
fn chi_gradient(pt: DetuningPoint, params: &ModelParams) -> Result<(f64, f64)> {
    params.validate()?;
    pt.validate(params)?;
    let delta = pt.delta();
    let omega = pt.omega(params);
    let (theta, xi) = theta_xi(pt, params);
    let den = theta * theta + xi * xi;
    if den.sqrt() < DEGENERATE_DENOMINATOR {
        return Err(Error::DegenerateDenominator {
            delta_p: pt.delta_p,
            delta_c: pt.delta_c,
            magnitude: den.sqrt(),
        });
    }
    let f_const = 2.0 * params.g_root_n * params.g_root_n / omega;
    // d/dΔp of the intermediates (dΔ/dΔp = 1).
    let theta_d = -(2.0 * pt.delta_p - pt.delta_c);
    let xi_d = params.gamma_c + params.gamma_a;
    let p = delta * theta - params.gamma_c * xi;
    let q = params.gamma_c * theta + delta * xi;
    let p_d = theta + delta * theta_d - params.gamma_c * xi_d;
    let q_d = params.gamma_c * theta_d + xi + delta * xi_d;
    let den_d = 2.0 * theta * theta_d + 2.0 * xi * xi_d;
    // Product rule: χ = F(ω)·(P/D), dF/dω = −F/ω.
    let dchi1 = -f_const / omega * (p / den) + f_const * (p_d * den - p * den_d) / (den * den);
    let dchi2 = -f_const / omega * (q / den) + f_const * (q_d * den - q * den_d) / (den * den);
    Ok((dchi1, dchi2))
}

/// Largest admissible finite-difference step: a tenth of the narrower of the
/// natural linewidth Γ_A and the transparency window Ω²/Γ_A.
fn fd_step_guard(params: &ModelParams) -> f64 {
    let window = params.rabi * params.rabi / params.gamma_a;
    params.gamma_a.min(window) / 10.0
}

fn check_fd_step(h: f64, params: &ModelParams) -> Result<()> {
    if !(h > 0.0) {
        return Err(Error::InvalidParams(format!(
            "finite-difference step must be > 0, got {h}"
        )));
    }
    let max = fd_step_guard(params);
    if h > max {
        return Err(Error::StepTooLarge { step: h, max });
    }
    Ok(())
}

/// ∂χ₁/∂ω at fixed Δc.
pub fn dchi1_domega(pt: DetuningPoint, params: &ModelParams, mode: DerivativeMode) -> Result<f64> {
    match mode {
        DerivativeMode::Analytic => chi_gradient(pt, params).map(|(d1, _)| d1),
        DerivativeMode::FiniteDifference { h } => {
            check_fd_step(h, params)?;
            let plus = DetuningPoint::new(pt.delta_p + h, pt.delta_c);
            let minus = DetuningPoint::new(pt.delta_p - h, pt.delta_c);
            let chi_p = chi_parts(plus, params)?;
            let chi_m = chi_parts(minus, params)?;
            Ok((chi_p.chi1 - chi_m.chi1) / (2.0 * h))
        }
    }
}

/// dn₁/dω at fixed Δc.
fn dn1_domega(pt: DetuningPoint, params: &ModelParams, mode: DerivativeMode) -> Result<f64> {
    match mode {
        DerivativeMode::Analytic => {
            let chi = chi_parts(pt, params)?;
            let (dchi1, dchi2) = chi_gradient(pt, params)?;
            let n = refractive_index(chi.complex());
            let x = 1.0 + chi.chi1;
            let r = x.hypot(chi.chi2);
            // From 4 n₁ dn₁ = (1 + X/R) dχ₁ + (χ₂/R) dχ₂.
            Ok(((1.0 + x / r) * dchi1 + (chi.chi2 / r) * dchi2) / (4.0 * n.n1))
        }
        DerivativeMode::FiniteDifference { h } => {
            check_fd_step(h, params)?;
            let plus = DetuningPoint::new(pt.delta_p + h, pt.delta_c);
            let minus = DetuningPoint::new(pt.delta_p - h, pt.delta_c);
            let n_p = refractive_index(chi_parts(plus, params)?.complex());
            let n_m = refractive_index(chi_parts(minus, params)?.complex());
            Ok((n_p.n1 - n_m.n1) / (2.0 * h))
        }
    }
}

/// Group velocity from the full dispersion formula vg/c = 1/(n₁ + ω·dn₁/dω).
pub fn group_velocity_general(
    pt: DetuningPoint,
    params: &ModelParams,
    mode: DerivativeMode,
) -> Result<GroupVelocity> {
    let chi = chi_parts(pt, params)?;
    let n = refractive_index(chi.complex());
    let dn1 = dn1_domega(pt, params, mode)?;
    let den = n.n1 + pt.omega(params) * dn1;
    if den <= 0.0 {
        return Err(Error::NonPositiveDenominator {
            delta_p: pt.delta_p,
            delta_c: pt.delta_c,
            value: den,
        });
    }
    Ok(GroupVelocity {
        vg_over_c: 1.0 / den,
        method: VgMethod::General,
        derivative_mode: mode,
    })
}

/// Group velocity on the two-photon-resonance line Δp = Δc, using the
/// reduction vg/c = 1/(1 + (ω/2)·dχ₁/dω).
pub fn group_velocity_resonant(
    delta_c: f64,
    params: &ModelParams,
    mode: DerivativeMode,
) -> Result<GroupVelocity> {
    let pt = DetuningPoint::resonant(delta_c);
    let dchi1 = dchi1_domega(pt, params, mode)?;
    let den = 1.0 + 0.5 * pt.omega(params) * dchi1;
    if den <= 0.0 {
        return Err(Error::NonPositiveDenominator {
            delta_p: pt.delta_p,
            delta_c: pt.delta_c,
            value: den,
        });
    }
    Ok(GroupVelocity {
        vg_over_c: 1.0 / den,
        method: VgMethod::Resonant,
        derivative_mode: mode,
    })
}
