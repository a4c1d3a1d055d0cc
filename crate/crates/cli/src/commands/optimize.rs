use anyhow::{Context, Result};
use hardy_core::hardy::Q_MAX;
use hardy_core::optimize::{critical_residual, maximize_q, OptimizeConfig, GAP_FLAG};
use hardy_core::SpinJ;
use log::warn;
use serde::Serialize;

use crate::args::{Format, OptimizeArgs};
use crate::output::{angle_out, csv_bytes, fmt_f64, json_bytes, unit_name};
use crate::Outcome;

/// Finite-difference step for the stationarity residual.
pub const RESIDUAL_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct Residuals {
    pub dq_dtheta1: f64,
    pub dq_dtheta2: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeReport {
    pub j: SpinJ,
    pub angle_unit: String,
    pub theta1_star: f64,
    pub theta2_star: f64,
    pub phi1_star: f64,
    pub phi2_star: f64,
    pub cos_theta1_star: f64,
    pub cos_theta2_star: f64,
    pub q_star: f64,
    pub q_reference: f64,
    pub gap: f64,
    /// Gap above the finding threshold.
    pub flagged: bool,
    pub residuals: Option<Residuals>,
    pub grid: usize,
    pub iterations: usize,
    pub evaluations: usize,
    pub bound_violations: usize,
    pub max_evaluated_q: f64,
}

pub fn optimize_report(a: &OptimizeArgs) -> Result<OptimizeReport> {
    let cfg = OptimizeConfig {
        grid_n: a.grid,
        refine_tol: a.refine_tol,
        full_phi: a.full_phi,
        ..OptimizeConfig::default()
    };
    let r = maximize_q(a.j, &cfg).context("optimization failed")?;
    let residuals = critical_residual(a.j, r.theta1_star, r.theta2_star, RESIDUAL_STEP)
        .ok()
        .map(|(d1, d2)| Residuals { dq_dtheta1: d1, dq_dtheta2: d2, h: RESIDUAL_STEP });
    let gap = (r.q_star - Q_MAX).abs();
    if gap > GAP_FLAG {
        warn!("spin {}: gap {gap} to the conjectured maximum", a.j);
    }
    Ok(OptimizeReport {
        j: a.j,
        angle_unit: unit_name(a.radians).to_string(),
        theta1_star: angle_out(r.theta1_star, a.radians),
        theta2_star: angle_out(r.theta2_star, a.radians),
        phi1_star: angle_out(r.phi1_star, a.radians),
        phi2_star: angle_out(r.phi2_star, a.radians),
        cos_theta1_star: r.theta1_star.cos(),
        cos_theta2_star: r.theta2_star.cos(),
        q_star: r.q_star,
        q_reference: Q_MAX,
        gap,
        flagged: gap > GAP_FLAG,
        residuals,
        grid: a.grid,
        iterations: r.iterations,
        evaluations: r.evaluations,
        bound_violations: r.bound_violations,
        max_evaluated_q: r.max_evaluated_q,
    })
}

pub fn run(a: &OptimizeArgs) -> Result<Outcome> {
    let rep = optimize_report(a)?;
    let bytes = match a.output.format_or(Format::Json) {
        Format::Json => json_bytes(&rep)?,
        Format::Csv => {
            let (d1, d2) = rep.residuals.as_ref().map_or((f64::NAN, f64::NAN), |r| {
                (r.dq_dtheta1, r.dq_dtheta2)
            });
            csv_bytes(
                &["j", "theta1_star", "theta2_star", "q_star", "gap", "dq_dtheta1", "dq_dtheta2"],
                &[vec![
                    rep.j.to_string(),
                    fmt_f64(rep.theta1_star),
                    fmt_f64(rep.theta2_star),
                    fmt_f64(rep.q_star),
                    fmt_f64(rep.gap),
                    fmt_f64(d1),
                    fmt_f64(d2),
                ]],
            )?
        }
    };
    Ok(Outcome::ok(bytes))
}
