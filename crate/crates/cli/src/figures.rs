//! The bundled reference figure set: susceptibility panels versus two-photon
//! detuning and group-velocity curves versus Rabi frequency and common
//! detuning, each written as CSV plus an SVG rendering.

use std::fs;
use std::path::{Path, PathBuf};

use eit_core::sweep::{sweep_chi, sweep_vg_vs_detuning, sweep_vg_vs_rabi, GridSpec};
use eit_core::ModelParams;

use crate::svg::emit_svg;
use crate::table::CsvTable;
use crate::AppError;

/// One named figure: a table plus the columns to plot.
pub struct Figure {
    pub name: &'static str,
    pub table: CsvTable,
    pub x_col: &'static str,
    pub y_cols: Vec<&'static str>,
}

fn chi_panel(name: &'static str, rabi: f64, delta_c: f64) -> Result<Figure, AppError> {
    let grid = GridSpec::new(-4.0, 4.0, 801)?;
    let params = ModelParams::canonical().with_rabi(rabi);
    let rows = sweep_chi(&grid, delta_c, &params)?;
    let mut table = CsvTable::new(&["delta", "chi1", "chi2", "n1", "n2"]);
    for r in rows {
        table.push_row(vec![r.abscissa, r.chi1, r.chi2, r.n1, r.n2])?;
    }
    Ok(Figure {
        name,
        table,
        x_col: "delta",
        y_cols: vec!["chi1", "chi2"],
    })
}

fn vg_vs_rabi_panel() -> Result<Figure, AppError> {
    // The Rabi axis starts at 0.04: for weaker control at this common
    // detuning the resonant dispersion slope turns anomalous and the slow
    // light description no longer applies.
    let grid = GridSpec::new(0.04, 300.0, 200)?;
    let delta_c = 5.0;
    let dense = sweep_vg_vs_rabi(&grid, delta_c, &ModelParams::canonical())?;
    let sparse = sweep_vg_vs_rabi(
        &grid,
        delta_c,
        &ModelParams::canonical().with_g_root_n(80.0),
    )?;
    let mut table = CsvTable::new(&["rabi", "vg_gn100", "vg_gn80"]);
    for (d, s) in dense.iter().zip(sparse.iter()) {
        table.push_row(vec![d.abscissa, d.vg_over_c.unwrap(), s.vg_over_c.unwrap()])?;
    }
    Ok(Figure {
        name: "fig3_a",
        table,
        x_col: "rabi",
        y_cols: vec!["vg_gn100", "vg_gn80"],
    })
}

fn vg_vs_detuning_panel() -> Result<Figure, AppError> {
    let grid = GridSpec::new(-5.0, 5.0, 401)?;
    let cases = [(200.0, 100.0), (50.0, 100.0), (0.04, 100.0), (0.04, 80.0)];
    let rows = sweep_vg_vs_detuning(&grid, &cases, &ModelParams::canonical())?;
    let per_case: Vec<_> = rows.chunks(grid.points).collect();
    let columns = [
        "delta_c",
        "vg_rabi200_gn100",
        "vg_rabi50_gn100",
        "vg_rabi0.04_gn100",
        "vg_rabi0.04_gn80",
    ];
    let mut table = CsvTable::new(&columns);
    for i in 0..grid.points {
        let mut row = vec![per_case[0][i].abscissa];
        for case in &per_case {
            row.push(case[i].vg_over_c.unwrap());
        }
        table.push_row(row)?;
    }
    Ok(Figure {
        name: "fig3_b",
        table,
        x_col: "delta_c",
        y_cols: columns[1..].to_vec(),
    })
}

/// All six reference figures with the parameter sets they are defined by:
/// four susceptibility panels (Ω = 2 and Ω = 1/2 at Δc = 0, Ω = 1/2 at
/// Δc = ±1.5) and the two group-velocity panels.
pub fn reference_figures() -> Result<Vec<Figure>, AppError> {
    Ok(vec![
        chi_panel("fig2_a1", 2.0, 0.0)?,
        chi_panel("fig2_a2", 0.5, 0.0)?,
        chi_panel("fig2_b1", 0.5, 1.5)?,
        chi_panel("fig2_b2", 0.5, -1.5)?,
        vg_vs_rabi_panel()?,
        vg_vs_detuning_panel()?,
    ])
}

/// Write every reference figure as `<name>.csv` and `<name>.svg` under `dir`.
pub fn write_figures(dir: &Path) -> Result<Vec<PathBuf>, AppError> {
    fs::create_dir_all(dir)
        .map_err(|e| AppError::Config(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for fig in reference_figures()? {
        let csv_path = dir.join(format!("{}.csv", fig.name));
        fs::write(&csv_path, fig.table.to_csv())
            .map_err(|e| AppError::Numeric(format!("cannot write {}: {e}", csv_path.display())))?;
        written.push(csv_path);

        let svg_path = dir.join(format!("{}.svg", fig.name));
        let rendered = emit_svg(&fig.table, fig.x_col, &fig.y_cols)?;
        fs::write(&svg_path, rendered)
            .map_err(|e| AppError::Numeric(format!("cannot write {}: {e}", svg_path.display())))?;
        written.push(svg_path);
    }
    Ok(written)
}
