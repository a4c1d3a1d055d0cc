//! Maximization of q over the observable angles.

use std::f64::consts::PI;

use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HardyError, Result};
use crate::hardy::{q_from_projection, q_max_at, HardyScenario, Q_MAX};
use crate::nelder_mead::{maximize, NelderMeadOptions};
use crate::spin::SpinJ;

/// Angles are searched over (ε, π−ε).
pub const ANGLE_MARGIN: f64 = 1e-4;
/// Tolerance above Q_MAX before an evaluated q counts as a bound violation.
pub const BOUND_SLACK: f64 = 1e-6;
/// Gap to Q_MAX flagged as a finding by the conjecture probe.
pub const GAP_FLAG: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeConfig {
    pub grid_n: usize,
    pub refine_tol: f64,
    pub max_iter: usize,
    /// Number of best grid cells used as refinement seeds.
    pub starts: usize,
    /// Also optimize φ₁, φ₂ instead of pinning them to 0.
    pub full_phi: bool,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self { grid_n: 64, refine_tol: 1e-10, max_iter: 2000, starts: 5, full_phi: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StartSummary {
    pub theta1_start: f64,
    pub theta2_start: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub q: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizationResult {
    pub j: SpinJ,
    pub theta1_star: f64,
    pub theta2_star: f64,
    pub phi1_star: f64,
    pub phi2_star: f64,
    pub q_star: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Best coarse-grid cell (θ₁, θ₂, q).
    pub grid_best: (f64, f64, f64),
    pub starts: Vec<StartSummary>,
    /// Best simplex value per iteration for the winning start.
    pub trace: Vec<f64>,
    pub max_evaluated_q: f64,
    /// Evaluations with q > Q_MAX + BOUND_SLACK.
    pub bound_violations: usize,
}

impl OptimizationResult {
    pub fn theta1_deg(&self) -> f64 {
        self.theta1_star.to_degrees()
    }

    pub fn theta2_deg(&self) -> f64 {
        self.theta2_star.to_degrees()
    }
}

fn in_range(t: f64) -> bool {
    t > ANGLE_MARGIN && t < PI - ANGLE_MARGIN
}

fn q_at(j: SpinJ, t1: f64, t2: f64, p1: f64, p2: f64) -> f64 {
    if !in_range(t1) || !in_range(t2) {
        return -1.0;
    }
    q_max_at(j, t1, t2, p1, p2).unwrap_or(-1.0)
}

/// q(ψ_max), falling back to the projection formula 1 − Σ|⟨Φ′ᵢ|Φ_{4j+2}⟩|²
/// where ψ_max is numerically undefined (q below ~1e-18 near θ → 0, π).
pub fn q_surface_value(j: SpinJ, t1: f64, t2: f64) -> f64 {
    q_max_at(j, t1, t2, 0.0, 0.0).unwrap_or_else(|| {
        HardyScenario::from_angles(j, t1, t2, 0.0, 0.0)
            .map(|sc| q_from_projection(&sc).max(0.0))
            .unwrap_or(f64::NAN)
    })
}

pub fn grid_angle(k: usize, n: usize) -> f64 {
    (k as f64 + 0.5) * PI / n as f64
}

/// q(ψ_max) on the n×n grid θ_k = (k+½)π/n, φ₁ = φ₂ = 0, row-major in θ₁.
pub fn q_grid(j: SpinJ, n: usize) -> Vec<(f64, f64, f64)> {
    (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (t1, t2) = (grid_angle(i / n, n), grid_angle(i % n, n));
            (t1, t2, q_surface_value(j, t1, t2))
        })
        .collect()
}

pub fn maximize_q(j: SpinJ, cfg: &OptimizeConfig) -> Result<OptimizationResult> {
    if cfg.grid_n < 2 {
        return Err(HardyError::OutOfRange(format!("grid_n = {} < 2", cfg.grid_n)));
    }
    if cfg.grid_n < 16 {
        warn!("grid_n = {} is below the recommended 16", cfg.grid_n);
    }
    let grid = q_grid(j, cfg.grid_n);
    let mut ranked: Vec<usize> = (0..grid.len()).filter(|&i| grid[i].2.is_finite()).collect();
    ranked.sort_by(|&a, &b| grid[b].2.partial_cmp(&grid[a].2).expect("finite").then(a.cmp(&b)));
    ranked.truncate(cfg.starts.max(1));
    if ranked.is_empty() {
        return Err(HardyError::DegenerateScenario(0.0));
    }
    let grid_best = grid[ranked[0]];
    let grid_max = grid.iter().map(|c| c.2).fold(f64::NEG_INFINITY, f64::max);

    let step = PI / cfg.grid_n as f64;
    let opts = NelderMeadOptions { xtol: cfg.refine_tol, ftol: 0.0, max_iter: cfg.max_iter };
    let runs: Vec<_> = ranked
        .par_iter()
        .map(|&i| {
            let (t1, t2, _) = grid[i];
            let mut seen_max = f64::NEG_INFINITY;
            let mut violations = 0usize;
            let mut track = |q: f64| {
                seen_max = seen_max.max(q);
                if q > Q_MAX + BOUND_SLACK {
                    violations += 1;
                }
                q
            };
            let r = if cfg.full_phi {
                maximize(
                    |x| track(q_at(j, x[0], x[1], x[2], x[3])),
                    &[t1, t2, 0.0, 0.0],
                    &[step / 2.0, step / 2.0, 0.5, 0.5],
                    &opts,
                )
            } else {
                maximize(
                    |x| track(q_at(j, x[0], x[1], 0.0, 0.0)),
                    &[t1, t2],
                    &[step / 2.0, -step / 2.0],
                    &opts,
                )
            };
            (i, r, seen_max, violations)
        })
        .collect();

    let mut best = 0;
    for (k, run) in runs.iter().enumerate() {
        if run.1.value > runs[best].1.value {
            best = k;
        }
    }
    let starts = runs
        .iter()
        .map(|(i, r, _, _)| StartSummary {
            theta1_start: grid[*i].0,
            theta2_start: grid[*i].1,
            theta1: r.x[0],
            theta2: r.x[1],
            q: r.value,
            iterations: r.iterations,
            converged: r.converged,
        })
        .collect();
    let max_evaluated_q = runs.iter().map(|r| r.2).fold(grid_max, f64::max);
    let bound_violations = runs.iter().map(|r| r.3).sum::<usize>()
        + grid.iter().filter(|c| c.2 > Q_MAX + BOUND_SLACK).count();
    if bound_violations > 0 {
        warn!("spin {j}: {bound_violations} evaluations exceeded the conjectured bound");
    }
    let r = &runs[best].1;
    let (phi1, phi2) = if cfg.full_phi { (r.x[2], r.x[3]) } else { (0.0, 0.0) };
    info!("spin {j}: q* = {:.16} at ({}, {})", r.value, r.x[0], r.x[1]);
    Ok(OptimizationResult {
        j,
        theta1_star: r.x[0],
        theta2_star: r.x[1],
        phi1_star: phi1.rem_euclid(2.0 * PI),
        phi2_star: phi2.rem_euclid(2.0 * PI),
        q_star: r.value,
        iterations: runs.iter().map(|r| r.1.iterations).sum(),
        evaluations: runs.iter().map(|r| r.1.evaluations).sum::<usize>() + grid.len(),
        grid_best,
        starts,
        trace: r.trace.clone(),
        max_evaluated_q,
        bound_violations,
    })
}

/// (θ, q(θ, θ)) for each sample, φ₁ = φ₂ = 0.
pub fn symmetric_slice(j: SpinJ, thetas: &[f64]) -> Vec<(f64, f64)> {
    thetas
        .par_iter()
        .map(|&t| (t, q_surface_value(j, t, t)))
        .collect()
}

/// Maximum of q on the diagonal θ₁ = θ₂: best of `samples` grid points,
/// refined by a one-dimensional simplex.
pub fn diagonal_maximum(j: SpinJ, samples: usize, refine_tol: f64) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(HardyError::EmptyInput);
    }
    let thetas: Vec<f64> = (0..samples).map(|k| grid_angle(k, samples)).collect();
    let slice = symmetric_slice(j, &thetas);
    let &(t0, _) = slice
        .iter()
        .filter(|p| p.1.is_finite())
        .fold(None, |acc: Option<&(f64, f64)>, p| match acc {
            Some(a) if a.1 >= p.1 => Some(a),
            _ => Some(p),
        })
        .ok_or(HardyError::DegenerateScenario(0.0))?;
    let opts = NelderMeadOptions { xtol: refine_tol, ftol: 0.0, max_iter: 2000 };
    let r = maximize(|x| q_at(j, x[0], x[0], 0.0, 0.0), &[t0], &[PI / samples as f64 / 2.0], &opts);
    Ok((r.x[0], r.value))
}

/// Central-difference gradient (∂q/∂θ₁, ∂q/∂θ₂) of q(ψ_max) at φ = 0.
pub fn critical_residual(j: SpinJ, theta1: f64, theta2: f64, h: f64) -> Result<(f64, f64)> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(HardyError::OutOfRange(format!("step h = {h} outside [1e-6, 1e-3]")));
    }
    let q = |a: f64, b: f64| -> Result<f64> {
        q_max_at(j, a, b, 0.0, 0.0).ok_or(HardyError::InvalidTheta(a.min(b)))
    };
    let d1 = (q(theta1 + h, theta2)? - q(theta1 - h, theta2)?) / (2.0 * h);
    let d2 = (q(theta1, theta2 + h)? - q(theta1, theta2 - h)?) / (2.0 * h);
    Ok((d1, d2))
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRow {
    pub j: SpinJ,
    pub q_star: f64,
    pub theta1_deg: f64,
    pub theta2_deg: f64,
    /// |q* − (5√5 − 11)/2|
    pub gap: f64,
    /// Gap above GAP_FLAG.
    pub flagged: bool,
    pub bound_violations: usize,
    /// max q over the outermost grid ring, reported for the open
    /// question of suprema at the θ endpoints.
    pub boundary_q: f64,
}

fn boundary_q(j: SpinJ, n: usize) -> f64 {
    let lo = ANGLE_MARGIN * 10.0;
    let hi = PI - lo;
    (0..n)
        .into_par_iter()
        .flat_map_iter(|k| {
            let t = grid_angle(k, n);
            [(lo, t), (hi, t), (t, lo), (t, hi)]
        })
        .map(|(a, b)| q_max_at(j, a, b, 0.0, 0.0).unwrap_or(f64::NAN))
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

pub fn conjecture_probe(js: &[SpinJ], cfg: &OptimizeConfig) -> Result<Vec<ConjectureRow>> {
    js.iter()
        .map(|&j| {
            let r = maximize_q(j, cfg)?;
            let gap = (r.q_star - Q_MAX).abs();
            let flagged = gap > GAP_FLAG;
            if flagged {
                warn!("spin {j}: q* = {} differs from the conjectured maximum by {gap}", r.q_star);
            }
            Ok(ConjectureRow {
                j,
                q_star: r.q_star,
                theta1_deg: r.theta1_deg(),
                theta2_deg: r.theta2_deg(),
                gap,
                flagged,
                bound_violations: r.bound_violations,
                boundary_q: boundary_q(j, cfg.grid_n),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::optimal_cos_theta;

    #[test]
    fn residual_rejects_bad_step() {
        assert!(critical_residual(SpinJ::HALF, 1.0, 1.0, 1e-2).is_err());
        assert!(critical_residual(SpinJ::HALF, 1.0, 1.0, 1e-8).is_err());
    }

    #[test]
    fn spin_half_residual_vanishes_at_optimum() {
        let t = optimal_cos_theta::<f64>(SpinJ::HALF).unwrap().acos();
        let (a, b) = critical_residual(SpinJ::HALF, t, t, 1e-4).unwrap();
        assert!(a.abs() < 1e-5 && b.abs() < 1e-5);
        let (a, b) = critical_residual(SpinJ::HALF, PI / 2.0, PI / 2.0, 1e-4).unwrap();
        assert!(a.abs() > 1e-3 && b.abs() > 1e-3);
    }

    #[test]
    fn small_grid_optimum_spin_half() {
        let cfg = OptimizeConfig { grid_n: 16, ..Default::default() };
        let r = maximize_q(SpinJ::HALF, &cfg).unwrap();
        assert!((r.q_star - Q_MAX).abs() < 1e-9);
        assert!((r.theta1_deg() - 76.3454).abs() < 1e-3);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0]));
        assert_eq!(r.bound_violations, 0);
    }

    #[test]
    fn rejects_tiny_grid() {
        assert!(maximize_q(SpinJ::HALF, &OptimizeConfig { grid_n: 1, ..Default::default() }).is_err());
    }
}
