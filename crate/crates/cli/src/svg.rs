//! Minimal deterministic SVG line plots: one polyline per requested column,
//! linear axes auto-scaled to the data with 5% margins.

use std::fmt::Write as _;

use crate::table::{CsvTable, TableError};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Data extent with a 5% margin on each side; degenerate spans fall back to a
/// fixed pad so the scale stays finite.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    let pad = if span > 0.0 {
        0.05 * span
    } else {
        (lo.abs() * 0.05).max(1.0)
    };
    (lo - pad, hi + pad)
}

/// Render `y_cols` against `x_col` as a standalone SVG document.
pub fn emit_svg(table: &CsvTable, x_col: &str, y_cols: &[&str]) -> Result<String, TableError> {
    let xi = table.col_index(x_col)?;
    let yis = y_cols
        .iter()
        .map(|c| table.col_index(c))
        .collect::<Result<Vec<_>, _>>()?;
    if table.rows.len() < 2 {
        return Err(TableError::Malformed(format!(
            "a line plot needs at least 2 rows, got {}",
            table.rows.len()
        )));
    }

    let (mut xlo, mut xhi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ylo, mut yhi) = (f64::INFINITY, f64::NEG_INFINITY);
    for row in &table.rows {
        xlo = xlo.min(row[xi]);
        xhi = xhi.max(row[xi]);
        for &yi in &yis {
            ylo = ylo.min(row[yi]);
            yhi = yhi.max(row[yi]);
        }
    }
    let (xlo, xhi) = padded(xlo, xhi);
    let (ylo, yhi) = padded(ylo, yhi);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let map_x = |x: f64| MARGIN_LEFT + (x - xlo) / (xhi - xlo) * plot_w;
    let map_y = |y: f64| MARGIN_TOP + (1.0 - (y - ylo) / (yhi - ylo)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    );

    // Axes along the plot edges.
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let _ = writeln!(
        svg,
        r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}" stroke="#000000" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}" stroke="#000000" stroke-width="1"/>"##
    );

    // End-of-axis tick labels.
    let _ = writeln!(
        svg,
        r#"<text x="{x0:.3}" y="{:.3}" font-size="12" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        xlo
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x1:.3}" y="{:.3}" font-size="12" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        xhi
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{y0:.3}" font-size="12" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        ylo
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{}</text>"#,
        x0 - 6.0,
        y1 + 4.0,
        yhi
    );

    // Axis labels from the column names.
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0,
        x_col
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.3}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.3})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        y_cols.join(", ")
    );

    for (k, &yi) in yis.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut points = String::new();
        for row in &table.rows {
            let _ = write!(points, "{:.3},{:.3} ", map_x(row[xi]), map_y(row[yi]));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            points.trim_end()
        );
        // Legend entry.
        let ly = MARGIN_TOP + 16.0 * (k as f64 + 1.0);
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{ly:.3}" font-size="12" fill="{color}">{}</text>"#,
            x1 - 180.0,
            y_cols[k]
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
