//! Plain-text configuration files: one `key = value` per line, `#` starts a
//! comment, unknown keys are errors. Missing keys fall back to the canonical
//! defaults (Γ_A = 1, Γ_C = 1e-4, g√N = 100, ω_ab = 1e6, Ω = 0.5, zero
//! detunings, probe amplitude 1e-3).

use std::fmt;

use num_complex::Complex64;

use eit_core::params;
use eit_core::{DetuningPoint, ModelParams};

pub const KEYS: [&str; 9] = [
    "gamma_a",
    "gamma_c",
    "g_root_n",
    "omega_ab",
    "rabi",
    "delta_p",
    "delta_c",
    "probe_amp_re",
    "probe_amp_im",
];

/// A configuration error, pointing at the offending line when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "config line {n}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Raw scalar settings prior to validation. CLI overrides are applied on top
/// of the parsed file before [`Settings::resolve`] builds the typed values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub gamma_a: f64,
    pub gamma_c: f64,
    pub g_root_n: f64,
    pub omega_ab: f64,
    pub rabi: f64,
    pub delta_p: f64,
    pub delta_c: f64,
    pub probe_amp_re: f64,
    pub probe_amp_im: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            gamma_a: params::CANONICAL_GAMMA_A,
            gamma_c: params::CANONICAL_GAMMA_C,
            g_root_n: params::CANONICAL_G_ROOT_N,
            omega_ab: params::CANONICAL_OMEGA_AB,
            rabi: 0.5,
            delta_p: 0.0,
            delta_c: 0.0,
            probe_amp_re: 1e-3,
            probe_amp_im: 0.0,
        }
    }
}

/// Validated configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub params: ModelParams,
    pub point: DetuningPoint,
    pub probe_amp: Complex64,
}

impl Settings {
    fn set(&mut self, key: &str, value: f64) -> bool {
        match key {
            "gamma_a" => self.gamma_a = value,
            "gamma_c" => self.gamma_c = value,
            "g_root_n" => self.g_root_n = value,
            "omega_ab" => self.omega_ab = value,
            "rabi" => self.rabi = value,
            "delta_p" => self.delta_p = value,
            "delta_c" => self.delta_c = value,
            "probe_amp_re" => self.probe_amp_re = value,
            "probe_amp_im" => self.probe_amp_im = value,
            _ => return false,
        }
        true
    }

    /// Parse `key = value` lines on top of the defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut settings = Self::default();
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError::at(line_no, format!("expected 'key = value', got {raw:?}"))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !KEYS.contains(&key) {
                return Err(ConfigError::at(line_no, format!("unknown key '{key}'")));
            }
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError::at(line_no, format!("duplicate key '{key}'")));
            }
            let parsed: f64 = value.parse().map_err(|_| {
                ConfigError::at(
                    line_no,
                    format!("malformed number '{value}' for key '{key}'"),
                )
            })?;
            settings.set(key, parsed);
            seen.push(key.to_string());
        }
        Ok(settings)
    }

    /// Validate and build the typed configuration.
    pub fn resolve(&self) -> Result<Config, ConfigError> {
        let params = ModelParams::new(
            self.gamma_a,
            self.gamma_c,
            self.g_root_n,
            self.omega_ab,
            self.rabi,
        )
        .map_err(|e| ConfigError::general(e.to_string()))?;
        let point = DetuningPoint::new(self.delta_p, self.delta_c);
        point
            .validate(&params)
            .map_err(|e| ConfigError::general(e.to_string()))?;
        if !self.probe_amp_re.is_finite() || !self.probe_amp_im.is_finite() {
            return Err(ConfigError::general("probe amplitude must be finite"));
        }
        Ok(Config {
            params,
            point,
            probe_amp: Complex64::new(self.probe_amp_re, self.probe_amp_im),
        })
    }

    /// Serialization that round-trips bit-exactly through [`Settings::parse`].
    pub fn serialize(&self) -> String {
        let values = [
            self.gamma_a,
            self.gamma_c,
            self.g_root_n,
            self.omega_ab,
            self.rabi,
            self.delta_p,
            self.delta_c,
            self.probe_amp_re,
            self.probe_amp_im,
        ];
        let mut out = String::new();
        for (key, value) in KEYS.iter().zip(values) {
            out.push_str(&format!("{key} = {}\n", crate::table::format_f64(value)));
        }
        out
    }
}
