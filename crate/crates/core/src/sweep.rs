//! Deterministic parameter sweeps over detuning and Rabi-frequency grids,
//! plus the feature extraction used to characterize the transparency window
//! and the group-velocity minimum.

use crate::error::{Error, Result};
use crate::params::{DetuningPoint, ModelParams};
use crate::suscept::{
    chi_parts, group_velocity_resonant, refractive_index, DerivativeMode, Susceptibility,
};

/// Uniform (linearly spaced) grid of abscissa values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl GridSpec {
    pub const MAX_POINTS: usize = 1_000_000;

    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() || !(start < stop) {
            return Err(Error::InvalidGrid(format!(
                "grid needs finite start < stop, got [{start}, {stop}]"
            )));
        }
        if points < 2 || points > Self::MAX_POINTS {
            return Err(Error::InvalidGrid(format!(
                "grid needs 2..={} points, got {points}",
                Self::MAX_POINTS
            )));
        }
        Ok(Self {
            start,
            stop,
            points,
        })
    }

    /// i-th grid value; the endpoints are exact.
    pub fn value(&self, i: usize) -> f64 {
        if i == 0 {
            self.start
        } else if i == self.points - 1 {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.value(i))
    }

    /// Cell width of the uniform grid.
    pub fn spacing(&self) -> f64 {
        (self.stop - self.start) / (self.points - 1) as f64
    }
}

/// One evaluated grid point with the parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Grid value: two-photon detuning Δ for χ sweeps, Ω or Δc for group
    /// velocity sweeps.
    pub abscissa: f64,
    pub chi1: f64,
    pub chi2: f64,
    pub n1: f64,
    pub n2: f64,
    /// Present for group-velocity sweeps.
    pub vg_over_c: Option<f64>,
    pub rabi: f64,
    pub delta_c: f64,
    pub g_root_n: f64,
}

fn row(
    abscissa: f64,
    chi: &Susceptibility,
    vg_over_c: Option<f64>,
    params: &ModelParams,
    delta_c: f64,
) -> SweepRow {
    let n = refractive_index(chi.complex());
    SweepRow {
        abscissa,
        chi1: chi.chi1,
        chi2: chi.chi2,
        n1: n.n1,
        n2: n.n2,
        vg_over_c,
        rabi: params.rabi,
        delta_c,
        g_root_n: params.g_root_n,
    }
}

/// Susceptibility and refractive index versus two-photon detuning Δ at fixed
/// control detuning (Δp = Δc + Δ).
pub fn sweep_chi(
    delta_grid: &GridSpec,
    delta_c: f64,
    params: &ModelParams,
) -> Result<Vec<SweepRow>> {
    delta_grid
        .values()
        .map(|delta| {
            let pt = DetuningPoint::new(delta_c + delta, delta_c);
            let chi = chi_parts(pt, params)?;
            Ok(row(delta, &chi, None, params, delta_c))
        })
        .collect()
}

/// Group velocity versus control Rabi frequency on the two-photon-resonance
/// line Δp = Δc.
pub fn sweep_vg_vs_rabi(
    rabi_grid: &GridSpec,
    delta_c: f64,
    params: &ModelParams,
) -> Result<Vec<SweepRow>> {
    if rabi_grid.start <= 0.0 {
        return Err(Error::InvalidGrid(
            "Rabi-frequency grid must be strictly positive".into(),
        ));
    }
    rabi_grid
        .values()
        .map(|rabi| {
            let p = params.with_rabi(rabi);
            let vg = group_velocity_resonant(delta_c, &p, DerivativeMode::Analytic)?;
            let chi = chi_parts(DetuningPoint::resonant(delta_c), &p)?;
            Ok(row(rabi, &chi, Some(vg.vg_over_c), &p, delta_c))
        })
        .collect()
}

/// Group velocity versus the common detuning Δc = Δp for each (Ω, g√N) case,
/// emitted case-major with rows in abscissa order within a case.
pub fn sweep_vg_vs_detuning(
    delta_c_grid: &GridSpec,
    cases: &[(f64, f64)],
    params: &ModelParams,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(cases.len() * delta_c_grid.points);
    for &(rabi, g_root_n) in cases {
        let p = params.with_rabi(rabi).with_g_root_n(g_root_n);
        p.validate()?;
        for delta_c in delta_c_grid.values() {
            let vg = group_velocity_resonant(delta_c, &p, DerivativeMode::Analytic)?;
            let chi = chi_parts(DetuningPoint::resonant(delta_c), &p)?;
            rows.push(row(delta_c, &chi, Some(vg.vg_over_c), &p, delta_c));
        }
    }
    Ok(rows)
}

/// Fraction of the flanking absorption maximum at which the transparency
/// window is measured.
///
/// A small fraction keeps both crossings inside the quadratic-dispersion core
/// of the dip, where the window width scales as Ω²/Γ_A. At one half the
/// crossings sit on the Autler-Townes shoulders once Ω exceeds Γ_A, and the
/// measured width grows only linearly with Ω.
pub const WINDOW_FRACTION: f64 = 0.1;

/// Full width of the low-absorption window: the interval around the χ₂
/// minimum where χ₂ stays below `fraction` of the nearest flanking local
/// maximum. Crossings are localized by linear interpolation between grid
/// points.
pub fn transparency_window_width(abscissa: &[f64], chi2: &[f64], fraction: f64) -> Result<f64> {
    if abscissa.len() != chi2.len() {
        return Err(Error::InvalidGrid(format!(
            "abscissa and chi2 lengths differ: {} vs {}",
            abscissa.len(),
            chi2.len()
        )));
    }
    let n = abscissa.len();
    if n < 5 {
        return Err(Error::InvalidGrid(
            "window extraction needs >= 5 points".into(),
        ));
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidGrid(format!(
            "window fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let i_min = (0..n)
        .min_by(|&a, &b| chi2[a].partial_cmp(&chi2[b]).unwrap())
        .unwrap();

    let is_peak = |i: usize| i > 0 && i + 1 < n && chi2[i] >= chi2[i - 1] && chi2[i] >= chi2[i + 1];
    let peak_left = (1..i_min).rev().find(|&i| is_peak(i));
    let peak_right = (i_min + 1..n - 1).find(|&i| is_peak(i));
    let (pl, pr) = match (peak_left, peak_right) {
        (Some(l), Some(r)) => (l, r),
        _ => {
            return Err(Error::InvalidGrid(
                "no local absorption maximum flanks the window".into(),
            ))
        }
    };
    let nearest =
        if (abscissa[i_min] - abscissa[pl]).abs() <= (abscissa[pr] - abscissa[i_min]).abs() {
            chi2[pl]
        } else {
            chi2[pr]
        };
    let threshold = fraction * nearest;

    let cross = |inside: usize, outside: usize| -> f64 {
        // chi2[inside] < threshold <= chi2[outside]
        let t = (threshold - chi2[inside]) / (chi2[outside] - chi2[inside]);
        abscissa[inside] + t * (abscissa[outside] - abscissa[inside])
    };
    let mut left = None;
    for i in (0..i_min).rev() {
        if chi2[i] >= threshold {
            left = Some(cross(i + 1, i));
            break;
        }
    }
    let mut right = None;
    for i in i_min + 1..n {
        if chi2[i] >= threshold {
            right = Some(cross(i - 1, i));
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        _ => Err(Error::InvalidGrid(
            "window does not close below the threshold inside the grid".into(),
        )),
    }
}

/// Grid point with the smallest value.
pub fn grid_argmin(abscissa: &[f64], values: &[f64]) -> Option<(f64, f64)> {
    abscissa
        .iter()
        .zip(values.iter())
        .filter(|(_, v)| v.is_finite())
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(&x, &v)| (x, v))
}
