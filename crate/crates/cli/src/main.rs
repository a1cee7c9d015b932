//! Command-line front end for the Λ-ensemble response library.
//!
//! Exit codes: 0 on success, 1 on configuration errors (bad flags, config
//! files, or invariant violations), 2 on numeric failures reported by the
//! underlying computations.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eit_core::algebra::{verify_algebra, AtomBasis};
use eit_core::dynamics::{integrate, storage_ramp, DriveSpec, MeanFieldState, RabiSchedule};
use eit_core::sweep::{sweep_chi, sweep_vg_vs_detuning, sweep_vg_vs_rabi, GridSpec};
use eit_core::{
    chi_parts, group_velocity_general, group_velocity_resonant, refractive_index, DerivativeMode,
};

use eit_cli::config::{self, Settings};
use eit_cli::table::{format_f64, CsvTable};
use eit_cli::{figures, svg, AppError};

#[derive(Parser)]
#[command(
    name = "eit",
    version,
    about = "Probe-field response of a Λ-atom ensemble under two-photon-resonant EIT: \
             susceptibility, refractive index, group velocity, mean-field dynamics, \
             and collective-operator algebra checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Configuration file (`key = value` lines, `#` comments).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format for tabular results.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Override: decay rate of the excited state.
    #[arg(long)]
    gamma_a: Option<f64>,
    /// Override: decay rate of the final state.
    #[arg(long)]
    gamma_c: Option<f64>,
    /// Override: collective coupling strength g√N.
    #[arg(long)]
    g_root_n: Option<f64>,
    /// Override: atomic transition frequency.
    #[arg(long)]
    omega_ab: Option<f64>,
    /// Override: control-field Rabi frequency.
    #[arg(long)]
    rabi: Option<f64>,
    /// Override: probe detuning.
    #[arg(long)]
    delta_p: Option<f64>,
    /// Override: control detuning.
    #[arg(long)]
    delta_c: Option<f64>,
    /// Override: probe amplitude, real part.
    #[arg(long)]
    probe_amp_re: Option<f64>,
    /// Override: probe amplitude, imaginary part.
    #[arg(long)]
    probe_amp_im: Option<f64>,
}

impl CommonOpts {
    fn resolve(&self) -> Result<config::Config, AppError> {
        let mut settings = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    AppError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                Settings::parse(&text)?
            }
            None => Settings::default(),
        };
        if let Some(v) = self.gamma_a {
            settings.gamma_a = v;
        }
        if let Some(v) = self.gamma_c {
            settings.gamma_c = v;
        }
        if let Some(v) = self.g_root_n {
            settings.g_root_n = v;
        }
        if let Some(v) = self.omega_ab {
            settings.omega_ab = v;
        }
        if let Some(v) = self.rabi {
            settings.rabi = v;
        }
        if let Some(v) = self.delta_p {
            settings.delta_p = v;
        }
        if let Some(v) = self.delta_c {
            settings.delta_c = v;
        }
        if let Some(v) = self.probe_amp_re {
            settings.probe_amp_re = v;
        }
        if let Some(v) = self.probe_amp_im {
            settings.probe_amp_im = v;
        }
        let cfg = settings.resolve()?;
        if let Some(warning) = cfg.params.rotating_wave_warning() {
            eprintln!("warning: {warning}");
        }
        Ok(cfg)
    }

    fn write_table(&self, table: &CsvTable) -> Result<(), AppError> {
        let rendered = match self.format {
            OutputFormat::Csv => table.to_csv(),
            OutputFormat::Svg => {
                let y_cols: Vec<&str> = table.columns[1..].iter().map(|s| s.as_str()).collect();
                svg::emit_svg(table, &table.columns[0], &y_cols)?
            }
        };
        self.write_text(&rendered)
    }

    fn write_text(&self, text: &str) -> Result<(), AppError> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| AppError::Numeric(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VgMethodArg {
    General,
    Resonant,
}

#[derive(Subcommand)]
enum Command {
    /// Susceptibility and refractive index at one detuning point.
    Chi {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Group velocity at one detuning point.
    Vg {
        #[command(flatten)]
        common: CommonOpts,
        /// Formula: the general dispersion form or the two-photon-resonant
        /// reduction (which uses Δp = Δc).
        #[arg(long, value_enum, default_value_t = VgMethodArg::General)]
        method: VgMethodArg,
        /// Evaluate the frequency derivative by central difference with this
        /// step instead of analytically.
        #[arg(long, value_name = "H")]
        fd_step: Option<f64>,
    },
    /// χ₁, χ₂ versus two-photon detuning Δ at fixed control detuning.
    SweepChi {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = -4.0)]
        delta_min: f64,
        #[arg(long, default_value_t = 4.0)]
        delta_max: f64,
        #[arg(long, default_value_t = 801)]
        points: usize,
    },
    /// Group velocity versus control Rabi frequency on the line Δp = Δc.
    SweepVgRabi {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 0.04)]
        rabi_min: f64,
        #[arg(long, default_value_t = 300.0)]
        rabi_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Group velocity versus the common detuning Δc = Δp.
    SweepVgDetuning {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = -5.0)]
        delta_c_min: f64,
        #[arg(long, default_value_t = 5.0)]
        delta_c_max: f64,
        #[arg(long, default_value_t = 401)]
        points: usize,
    },
    /// Integrate the mean-field equations from rest with constant drive.
    Ode {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 100.0)]
        t_end: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Record every N-th step (0 = choose automatically, about 1000 rows).
        #[arg(long, default_value_t = 0)]
        stride: usize,
    },
    /// Ramp the control field down at two-photon resonance and track the
    /// group velocity and the stored excitation.
    Storage {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 50.0)]
        rabi_start: f64,
        #[arg(long, default_value_t = 0.04)]
        rabi_end: f64,
        #[arg(long, default_value_t = 500.0)]
        t_ramp: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Verify the collective-operator commutation relations at finite N.
    Algebra {
        #[command(flatten)]
        common: CommonOpts,
        /// Check every atom count from 1 up to this value (at most 8).
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Regenerate the bundled reference figure data (CSV and SVG).
    Figures {
        /// Directory receiving fig2_*.csv/svg and fig3_*.csv/svg.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Chi { common } => {
            let cfg = common.resolve()?;
            let chi = chi_parts(cfg.point, &cfg.params)?;
            let n = refractive_index(chi.complex());
            let mut t = CsvTable::new(&[
                "delta_p", "delta_c", "delta", "theta", "xi", "f_const", "chi1", "chi2", "n1", "n2",
            ]);
            t.push_row(vec![
                cfg.point.delta_p,
                cfg.point.delta_c,
                cfg.point.delta(),
                chi.theta,
                chi.xi,
                chi.f_const,
                chi.chi1,
                chi.chi2,
                n.n1,
                n.n2,
            ])?;
            common.write_table(&t)
        }
        Command::Vg {
            common,
            method,
            fd_step,
        } => {
            let cfg = common.resolve()?;
            let mode = match fd_step {
                Some(h) => DerivativeMode::FiniteDifference { h },
                None => DerivativeMode::Analytic,
            };
            let vg = match method {
                VgMethodArg::General => group_velocity_general(cfg.point, &cfg.params, mode)?,
                VgMethodArg::Resonant => {
                    group_velocity_resonant(cfg.point.delta_c, &cfg.params, mode)?
                }
            };
            let mut t = CsvTable::new(&["delta_p", "delta_c", "vg_over_c"]);
            let delta_p = match method {
                VgMethodArg::General => cfg.point.delta_p,
                VgMethodArg::Resonant => cfg.point.delta_c,
            };
            t.push_row(vec![delta_p, cfg.point.delta_c, vg.vg_over_c])?;
            common.write_table(&t)
        }
        Command::SweepChi {
            common,
            delta_min,
            delta_max,
            points,
        } => {
            let cfg = common.resolve()?;
            let grid = GridSpec::new(delta_min, delta_max, points)?;
            let rows = sweep_chi(&grid, cfg.point.delta_c, &cfg.params)?;
            let mut t = CsvTable::new(&["delta", "chi1", "chi2", "n1", "n2"]);
            for r in rows {
                t.push_row(vec![r.abscissa, r.chi1, r.chi2, r.n1, r.n2])?;
            }
            common.write_table(&t)
        }
        Command::SweepVgRabi {
            common,
            rabi_min,
            rabi_max,
            points,
        } => {
            let cfg = common.resolve()?;
            let grid = GridSpec::new(rabi_min, rabi_max, points)?;
            let rows = sweep_vg_vs_rabi(&grid, cfg.point.delta_c, &cfg.params)?;
            let mut t = CsvTable::new(&["rabi", "vg_over_c"]);
            for r in rows {
                t.push_row(vec![r.abscissa, r.vg_over_c.unwrap()])?;
            }
            common.write_table(&t)
        }
        Command::SweepVgDetuning {
            common,
            delta_c_min,
            delta_c_max,
            points,
        } => {
            let cfg = common.resolve()?;
            let grid = GridSpec::new(delta_c_min, delta_c_max, points)?;
            let cases = [(cfg.params.rabi, cfg.params.g_root_n)];
            let rows = sweep_vg_vs_detuning(&grid, &cases, &cfg.params)?;
            let mut t = CsvTable::new(&["delta_c", "vg_over_c"]);
            for r in rows {
                t.push_row(vec![r.abscissa, r.vg_over_c.unwrap()])?;
            }
            common.write_table(&t)
        }
        Command::Ode {
            common,
            t_end,
            dt,
            stride,
        } => {
            let cfg = common.resolve()?;
            let drive = DriveSpec::constant(cfg.probe_amp, cfg.params.rabi);
            let stride = if stride == 0 {
                ((t_end / dt) as usize / 1000).max(1)
            } else {
                stride
            };
            let traj = integrate(
                MeanFieldState::zero(),
                cfg.point,
                &cfg.params,
                &drive,
                t_end,
                dt,
                stride,
            )?;
            let mut t = CsvTable::new(&["time", "a_re", "a_im", "c_re", "c_im", "abs_a", "abs_c"]);
            for s in traj {
                t.push_row(vec![
                    s.time,
                    s.exc_a.re,
                    s.exc_a.im,
                    s.exc_c_tilde.re,
                    s.exc_c_tilde.im,
                    s.exc_a.norm(),
                    s.exc_c_tilde.norm(),
                ])?;
            }
            common.write_table(&t)
        }
        Command::Storage {
            common,
            rabi_start,
            rabi_end,
            t_ramp,
            samples,
        } => {
            let cfg = common.resolve()?;
            let drive = DriveSpec {
                probe_amp: cfg.probe_amp,
                rabi: RabiSchedule::ramp(0.0, rabi_start, t_ramp, rabi_end)?,
            };
            let rows = storage_ramp(&cfg.params, cfg.point.delta_c, &drive, samples)?;
            let mut t = CsvTable::new(&["time", "rabi", "vg_over_c", "abs_a", "abs_c"]);
            for r in rows {
                t.push_row(vec![r.time, r.rabi, r.vg_over_c, r.abs_a, r.abs_c_tilde])?;
            }
            common.write_table(&t)
        }
        Command::Algebra { common, n_max } => {
            let mut out = String::from("n_atoms,identity,max_abs_deviation\n");
            for n in 1..=n_max.max(1) {
                let report = verify_algebra(AtomBasis::new(n)?)?;
                for check in report {
                    out.push_str(&format!(
                        "{n},\"{}\",{}\n",
                        check.identity,
                        format_f64(check.deviation)
                    ));
                }
            }
            common.write_text(&out)
        }
        Command::Figures { out_dir } => {
            let written = figures::write_figures(&out_dir)?;
            for path in written {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let success = matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
