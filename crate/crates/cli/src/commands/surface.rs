use anyhow::{bail, Result};
use hardy_core::optimize::{grid_angle, q_grid, symmetric_slice};
use hardy_core::SpinJ;
use serde::Serialize;

use crate::args::{Format, SurfaceArgs};
use crate::output::{angle_out, csv_bytes, fmt_f64, json_bytes, unit_name};
use crate::Outcome;

/// Largest supported 2j.
pub const MAX_TWO_J: u32 = 8;

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceRow {
    pub theta1: f64,
    pub theta2: f64,
    pub q: f64,
}

#[derive(Serialize)]
struct SurfaceJson<'a> {
    j: SpinJ,
    grid: usize,
    diagonal: bool,
    angle_unit: &'a str,
    rows: &'a [SurfaceRow],
}

/// Rows in radians.
pub fn surface_rows(j: SpinJ, grid: usize, diagonal: bool) -> Vec<SurfaceRow> {
    if diagonal {
        let thetas: Vec<f64> = (0..grid).map(|k| grid_angle(k, grid)).collect();
        symmetric_slice(j, &thetas)
            .into_iter()
            .map(|(t, q)| SurfaceRow { theta1: t, theta2: t, q })
            .collect()
    } else {
        q_grid(j, grid)
            .into_iter()
            .map(|(theta1, theta2, q)| SurfaceRow { theta1, theta2, q })
            .collect()
    }
}

pub fn run(a: &SurfaceArgs) -> Result<Outcome> {
    if a.j.two_j() > MAX_TWO_J {
        bail!("surface supports j ≤ 4, got {}", a.j);
    }
    if a.grid == 0 {
        bail!("--grid must be at least 1");
    }
    let rows: Vec<SurfaceRow> = surface_rows(a.j, a.grid, a.diagonal)
        .into_iter()
        .map(|r| SurfaceRow {
            theta1: angle_out(r.theta1, a.radians),
            theta2: angle_out(r.theta2, a.radians),
            q: r.q,
        })
        .collect();
    let bytes = match a.output.format_or(Format::Csv) {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![fmt_f64(r.theta1), fmt_f64(r.theta2), fmt_f64(r.q)])
                .collect();
            csv_bytes(&["theta1", "theta2", "q"], &body)?
        }
        Format::Json => json_bytes(&SurfaceJson {
            j: a.j,
            grid: a.grid,
            diagonal: a.diagonal,
            angle_unit: unit_name(a.radians),
            rows: &rows,
        })?,
    };
    Ok(Outcome::ok(bytes))
}
