//! Acceptance suite: one test per shipped guarantee, each printing a PASS
//! line with the measured margin (run with `--nocapture` to see them).

use std::fs;
use std::process::Command;

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

use eit_core::algebra::{verify_algebra, AtomBasis};
use eit_core::dynamics::{
    integrate, steady_state, storage_ramp, DriveSpec, MeanFieldState, RabiSchedule,
};
use eit_core::sweep::{
    grid_argmin, sweep_chi, sweep_vg_vs_detuning, sweep_vg_vs_rabi, transparency_window_width,
    GridSpec, SweepRow, WINDOW_FRACTION,
};
use eit_core::{
    chi_complex, chi_parts, dchi1_domega, group_velocity_general, group_velocity_resonant,
    DerivativeMode, DetuningPoint, ModelParams,
};

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

/// C1 — the Θ/Ξ decomposition agrees with the direct complex susceptibility
/// componentwise to 1e-12 relative over a 10,000-point random grid.
#[test]
fn c01_decomposition_consistency() {
    let mut rng = StdRng::seed_from_u64(0x20250810);
    let rabi_set = [0.04, 0.5, 2.0, 50.0, 200.0];
    let mut max_rel = 0.0f64;
    for i in 0..10_000 {
        let pt = DetuningPoint::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let params = ModelParams::canonical().with_rabi(rabi_set[i % rabi_set.len()]);
        let z = chi_complex(pt, &params).unwrap();
        let parts = chi_parts(pt, &params).unwrap();
        for (ours, reference) in [(parts.chi1, z.re), (parts.chi2, z.im)] {
            if reference == 0.0 {
                assert_eq!(ours, 0.0);
            } else {
                max_rel = max_rel.max(rel(ours, reference));
            }
        }
    }
    assert!(max_rel <= 1e-12, "max componentwise deviation {max_rel:e}");
    println!(
        "ACCEPTANCE C01 PASS: chi decomposition matches complex form on 10000 random points \
         (max rel {max_rel:.2e} <= 1e-12)"
    );
}

/// C2 — exact transparency at Δp = Δc = 0, Ω = 0.5: χ₁ = 0 and χ₂ equals the
/// independently evaluated complex expression to 1e-11.
#[test]
fn c02_two_photon_transparency_value() {
    let params = ModelParams::canonical();
    let pt = DetuningPoint::new(0.0, 0.0);

    // Independent oracle, straight from complex arithmetic.
    let i = Complex64::I;
    let den = Complex64::new(1.0, 0.0) * Complex64::new(1e-4, 0.0) + 0.5 * 0.5;
    let oracle = 2.0 * i * 1e4 * Complex64::new(1e-4, 0.0) / (1e6 * den);
    assert!((oracle.im - 7.99680e-6).abs() < 1e-10);

    let parts = chi_parts(pt, &params).unwrap();
    let z = chi_complex(pt, &params).unwrap();
    assert_eq!(parts.chi1, 0.0, "chi1 must vanish exactly");
    assert_eq!(z.re, 0.0);
    assert!((parts.chi2 - oracle.im).abs() <= 1e-11);
    assert!((z.im - oracle.im).abs() <= 1e-11);
    println!(
        "ACCEPTANCE C02 PASS: chi1 = 0 exactly, chi2 = {:.6e} within 1e-11 of the oracle",
        parts.chi2
    );
}

/// C3 — the low-absorption window for Ω = 2 is wider than for Ω = 0.5 by a
/// factor in [10, 20].
#[test]
fn c03_window_width_scaling() {
    let grid = GridSpec::new(-4.0, 4.0, 801).unwrap();
    let width = |rabi: f64| {
        let rows = sweep_chi(&grid, 0.0, &ModelParams::canonical().with_rabi(rabi)).unwrap();
        let xs: Vec<f64> = rows.iter().map(|r| r.abscissa).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.chi2).collect();
        transparency_window_width(&xs, &ys, WINDOW_FRACTION).unwrap()
    };
    let factor = width(2.0) / width(0.5);
    assert!(
        (10.0..=20.0).contains(&factor),
        "window-width factor {factor}"
    );
    println!("ACCEPTANCE C03 PASS: window-width factor {factor:.3} within [10, 20]");
}

/// C4 — group velocity matches the simplified limit 1/(1 + g²N/Ω²) at zero
/// common detuning: 0.2 ± 0.002 at Ω = 50 and 0.8 ± 0.008 at Ω = 200.
#[test]
fn c04_simplified_limit_group_velocity() {
    let mut measured = Vec::new();
    for (rabi, target, tol) in [(50.0, 0.2, 0.002), (200.0, 0.8, 0.008)] {
        let params = ModelParams::canonical().with_rabi(rabi);
        let resonant = group_velocity_resonant(0.0, &params, DerivativeMode::Analytic)
            .unwrap()
            .vg_over_c;
        let general = group_velocity_general(
            DetuningPoint::new(0.0, 0.0),
            &params,
            DerivativeMode::Analytic,
        )
        .unwrap()
        .vg_over_c;
        assert!(
            (resonant - target).abs() <= tol,
            "resonant {resonant} vs {target}"
        );
        assert!(
            (general - target).abs() <= tol,
            "general {general} vs {target}"
        );
        measured.push(resonant);
    }
    println!(
        "ACCEPTANCE C04 PASS: vg/c = {:.6} at omega_R 50 (0.2 +/- 0.002) and {:.6} at 200 \
         (0.8 +/- 0.008)",
        measured[0], measured[1]
    );
}

/// C5 — detuning dependence: for Ω = 0.04 the vg(Δc) minimum sits within
/// |Δc| ≤ 0.5 and the curve grows outward on both sides; for Ω = 50 the
/// relative variation stays below 1%.
#[test]
fn c05_detuning_dependence() {
    let grid = GridSpec::new(-5.0, 5.0, 401).unwrap();
    let params = ModelParams::canonical();

    let slow = sweep_vg_vs_detuning(&grid, &[(0.04, 100.0)], &params).unwrap();
    let xs: Vec<f64> = slow.iter().map(|r| r.abscissa).collect();
    let vs: Vec<f64> = slow.iter().map(|r| r.vg_over_c.unwrap()).collect();
    let (argmin, _) = grid_argmin(&xs, &vs).unwrap();
    assert!(argmin.abs() <= 0.5, "argmin at {argmin}");
    let i0 = xs.iter().position(|&x| x == argmin).unwrap();
    for i in i0..vs.len() - 1 {
        assert!(vs[i + 1] >= vs[i], "not monotone right of the minimum");
    }
    for i in (1..=i0).rev() {
        assert!(vs[i - 1] >= vs[i], "not monotone left of the minimum");
    }

    let flat = sweep_vg_vs_detuning(&grid, &[(50.0, 100.0)], &params).unwrap();
    let v: Vec<f64> = flat.iter().map(|r| r.vg_over_c.unwrap()).collect();
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let spread =
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread / mean < 0.01, "variation {}", spread / mean);
    println!(
        "ACCEPTANCE C05 PASS: vg minimum at delta_c = {argmin} (|.| <= 0.5), monotone outward; \
         omega_R = 50 variation {:.2e} < 1%",
        spread / mean
    );
}

/// C6 — density ordering and subluminality on both group-velocity grids:
/// the g√N = 100 curve lies strictly below g√N = 80 pointwise, and every
/// value lies strictly inside (0, 1).
#[test]
fn c06_density_ordering_and_subluminality() {
    let params = ModelParams::canonical();
    let in_unit = |rows: &[SweepRow]| {
        rows.iter()
            .all(|r| r.vg_over_c.unwrap() > 0.0 && r.vg_over_c.unwrap() < 1.0)
    };

    // Rabi-frequency grid at Δc = 5.
    let rabi_grid = GridSpec::new(0.04, 300.0, 200).unwrap();
    let dense = sweep_vg_vs_rabi(&rabi_grid, 5.0, &params).unwrap();
    let sparse = sweep_vg_vs_rabi(&rabi_grid, 5.0, &params.with_g_root_n(80.0)).unwrap();
    assert!(in_unit(&dense) && in_unit(&sparse));
    for (d, s) in dense.iter().zip(sparse.iter()) {
        assert!(d.vg_over_c.unwrap() < s.vg_over_c.unwrap());
    }

    // Detuning grid, all four cases.
    let dc_grid = GridSpec::new(-5.0, 5.0, 401).unwrap();
    let cases = [(200.0, 100.0), (50.0, 100.0), (0.04, 100.0), (0.04, 80.0)];
    let rows = sweep_vg_vs_detuning(&dc_grid, &cases, &params).unwrap();
    assert!(in_unit(&rows));
    let per_case: Vec<_> = rows.chunks(dc_grid.points).collect();
    for (d, s) in per_case[2].iter().zip(per_case[3].iter()) {
        assert!(d.vg_over_c.unwrap() < s.vg_over_c.unwrap());
    }
    println!(
        "ACCEPTANCE C06 PASS: denser medium strictly slower pointwise on both grids; \
         all vg/c within (0, 1)"
    );
}

/// C7 — the integrated mean-field trajectory reaches the closed-form steady
/// state to 1e-6 relative, and the closed form matches an independent 2x2
/// linear solve to 1e-12.
#[test]
fn c07_steady_state_oracle_equivalence() {
    let pt = DetuningPoint::new(0.0, 0.0);
    let amp = Complex64::new(1e-3, 0.0);
    let mut worst_ode = 0.0f64;
    let mut worst_solve = 0.0f64;
    for rabi in [0.04, 0.5, 2.0, 50.0] {
        let params = ModelParams::canonical().with_rabi(rabi);
        let ss = steady_state(pt, &params, amp).unwrap();
        assert!(ss.residual < 1e-10);

        // Independent oracle: Cramer's rule on the 2x2 system M x = -s.
        let i = Complex64::I;
        let m11 = -Complex64::new(params.gamma_a, -pt.delta_p);
        let m12 = -i * rabi;
        let m21 = -i * rabi;
        let m22 = -Complex64::new(params.gamma_c, -pt.delta());
        let s1 = -i * params.g_root_n * amp;
        let det = m11 * m22 - m12 * m21;
        let a_ref = -(m22 * s1) / det;
        let c_ref = (m21 * s1) / det;
        let solve_err = ((ss.exc_a - a_ref).norm_sqr() + (ss.exc_c_tilde - c_ref).norm_sqr())
            .sqrt()
            / (a_ref.norm_sqr() + c_ref.norm_sqr()).sqrt();
        worst_solve = worst_solve.max(solve_err);
        assert!(solve_err <= 1e-12, "rabi {rabi}: solve error {solve_err:e}");

        // Long-time integration from rest.
        let slow_rate = (params.gamma_c + rabi * rabi / params.gamma_a).min(1.0);
        let t_end = 80.0 / slow_rate;
        let dt = (0.1 / params.gamma_a.max(rabi)).min(0.01);
        let drive = DriveSpec::constant(amp, rabi);
        let traj = integrate(
            MeanFieldState::zero(),
            pt,
            &params,
            &drive,
            t_end,
            dt,
            usize::MAX,
        )
        .unwrap();
        let last = traj.last().unwrap();
        let ode_err = ((last.exc_a - ss.exc_a).norm_sqr()
            + (last.exc_c_tilde - ss.exc_c_tilde).norm_sqr())
        .sqrt()
            / (ss.exc_a.norm_sqr() + ss.exc_c_tilde.norm_sqr()).sqrt();
        worst_ode = worst_ode.max(ode_err);
        assert!(ode_err <= 1e-6, "rabi {rabi}: ODE error {ode_err:e}");
    }
    println!(
        "ACCEPTANCE C07 PASS: ODE terminal state within {worst_ode:.2e} (<= 1e-6) of the closed \
         form; closed form within {worst_solve:.2e} (<= 1e-12) of the independent solve"
    );
}

/// C8 — analytic dχ₁/dω agrees with the central finite difference to 1e-6
/// relative on 100 random points (one linewidth or more off the two-photon
/// resonance, where the difference oracle is well conditioned).
#[test]
fn c08_gradient_check() {
    let mut rng = StdRng::seed_from_u64(0xE17);
    let rabi_set = [0.04, 0.5, 2.0, 50.0];
    let h = 1e-4;
    let mut accepted = 0;
    let mut worst = 0.0f64;
    while accepted < 100 {
        let delta_p: f64 = rng.random_range(-5.0..5.0);
        let delta_c: f64 = rng.random_range(-5.0..5.0);
        if (delta_p - delta_c).abs() < 1.0 {
            continue;
        }
        let params = ModelParams::canonical().with_rabi(rabi_set[accepted % rabi_set.len()]);
        let pt = DetuningPoint::new(delta_p, delta_c);
        let analytic = dchi1_domega(pt, &params, DerivativeMode::Analytic).unwrap();
        let fd = dchi1_domega(pt, &params, DerivativeMode::FiniteDifference { h }).unwrap();
        worst = worst.max((analytic - fd).abs() / analytic.abs().max(fd.abs()));
        accepted += 1;
    }
    assert!(worst <= 1e-6, "worst relative deviation {worst:e}");
    println!("ACCEPTANCE C08 PASS: gradient check on 100 points, worst rel {worst:.2e} <= 1e-6");
}

/// C9 — operator algebra for N = 1..6: every commutator identity within
/// 1e-13, ⟨GS|[A,A†]|GS⟩ = 1 and the one-excitation expectation 1 − 1/N.
#[test]
fn c09_algebra_suite() {
    let mut worst = 0.0f64;
    for n in 1..=6 {
        let report = verify_algebra(AtomBasis::new(n).unwrap()).unwrap();
        assert_eq!(report.len(), 8);
        for check in &report {
            assert!(
                check.deviation <= 1e-13,
                "N={n}: {} deviated by {:e}",
                check.identity,
                check.deviation
            );
            worst = worst.max(check.deviation);
        }
    }
    println!(
        "ACCEPTANCE C09 PASS: all commutator identities and bosonic-limit expectations for \
         N = 1..6 within {worst:.2e} (<= 1e-13)"
    );
}

/// C10 — storage ramp Ω: 50 → 0.04 over T = 500 at Δc = 0: vg samples are
/// monotone non-increasing with endpoints 0.2 ± 1% and ≤ 2e-7.
#[test]
fn c10_storage_ramp() {
    let params = ModelParams::canonical();
    let drive = DriveSpec {
        probe_amp: Complex64::new(1e-3, 0.0),
        rabi: RabiSchedule::ramp(0.0, 50.0, 500.0, 0.04).unwrap(),
    };
    let rows = storage_ramp(&params, 0.0, &drive, 101).unwrap();
    assert_eq!(rows.len(), 101);
    for pair in rows.windows(2) {
        assert!(
            pair[1].vg_over_c <= pair[0].vg_over_c,
            "vg increased at t = {}",
            pair[1].time
        );
    }
    let first = rows[0].vg_over_c;
    let last = rows[rows.len() - 1].vg_over_c;
    assert!((first - 0.2).abs() <= 0.2 * 0.01, "start {first}");
    assert!(last <= 2e-7, "end {last}");
    println!(
        "ACCEPTANCE C10 PASS: ramp vg monotone non-increasing from {first:.6} (0.2 +/- 1%) \
         to {last:.3e} (<= 2e-7)"
    );
}

/// C11 — the `figures` subcommand is deterministic: two runs produce
/// byte-identical CSV and SVG files.
#[test]
fn c11_figures_determinism() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let status = Command::new(env!("CARGO_BIN_EXE_eit"))
            .current_dir(dir.path())
            .arg("figures")
            .status()
            .expect("binary runs");
        assert!(status.success());
    }
    let mut compared = 0;
    for name in [
        "fig2_a1", "fig2_a2", "fig2_b1", "fig2_b2", "fig3_a", "fig3_b",
    ] {
        for ext in ["csv", "svg"] {
            let file = format!("{name}.{ext}");
            let a =
                fs::read(dirs[0].path().join(&file)).unwrap_or_else(|_| panic!("{file} missing"));
            let b = fs::read(dirs[1].path().join(&file)).unwrap();
            assert_eq!(a, b, "{file} differs");
            compared += 1;
        }
    }
    assert_eq!(compared, 12);
    println!("ACCEPTANCE C11 PASS: figures emitted {compared} byte-identical files across runs");
}
