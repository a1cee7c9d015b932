//! Linear optical response of a weak probe field in an ensemble of Λ-type
//! atoms driven by a classical control field.
//!
//! The crate evaluates the closed-form steady-state susceptibility of the
//! medium, the complex refractive index derived from it, and the probe group
//! velocity, all in normalized units (rates in units of Γ_A, velocities as
//! fractions of c). Alongside the closed forms it provides:
//!
//! * [`dynamics`] — direct integration of the mean-field equations of motion
//!   for the collective excitation amplitudes, used to cross-check the
//!   closed-form steady state and to demonstrate adiabatic storage ramps;
//! * [`algebra`] — exact finite-N matrix representations of the collective
//!   atomic operators and verification of their commutation relations;
//! * [`sweep`] — deterministic parameter sweeps over detuning and Rabi
//!   frequency grids, with feature extraction (transparency window width,
//!   group-velocity minimum).

pub mod algebra;
pub mod dynamics;
mod error;
pub mod params;
pub mod suscept;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{DetuningPoint, ModelParams};
pub use suscept::{
    chi_complex, chi_parts, dchi1_domega, group_velocity_general, group_velocity_resonant,
    refractive_index, theta_xi, DerivativeMode, GroupVelocity, RefractiveIndex, Susceptibility,
    VgMethod,
};
