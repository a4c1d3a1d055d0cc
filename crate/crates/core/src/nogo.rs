//! Numerical probes of the statement that no maximally entangled state
//! satisfies the Hardy conditions.
//!
//! A maximally entangled state is (I ⊗ U)|Ψ₀⟩. The search maximizes the
//! penalized objective q − κ·Σ(zero-condition probabilities) over U. This is
//! a falsification probe: failing to find a feasible q > 0 supports the
//! claim but does not prove it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{maxent_from_matrix, maxent_state};
use crate::error::Result;
use crate::hardy::{condition_states, BipartiteState, ConditionSet, HardyScenario};
use crate::linalg::CMatrix;
use crate::nelder_mead::{maximize, NelderMeadOptions};
use crate::scalar::C;
use crate::unitary::UnitaryParam;

#[derive(Debug, Clone, Serialize)]
pub struct NoGoConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub kappa: f64,
    /// Simplex rebuilt around the current best this many times in total.
    pub rounds: usize,
    /// A point is feasible when every zero-condition probability is below this.
    pub feasible_tol: f64,
    pub seed: u64,
}

impl Default for NoGoConfig {
    fn default() -> Self {
        Self { restarts: 200, iterations: 500, kappa: 1e6, rounds: 1, feasible_tol: 1e-10, seed: 7 }
    }
}

impl NoGoConfig {
    /// Budget for [`general_state_search`], whose 2d² parameters need longer
    /// simplex runs than the d² of the unitary search.
    pub fn general_states() -> Self {
        Self { iterations: 2000, rounds: 8, ..Self::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NoGoResult {
    pub restarts: usize,
    pub feasible_restarts: usize,
    /// Largest q among feasible end points, if any restart ended feasible.
    pub best_feasible_q: Option<f64>,
    pub best_objective: f64,
    /// q and max zero-condition probability at the best objective.
    pub q_at_best: f64,
    pub zero_at_best: f64,
    /// Smallest max zero-condition probability over all end points.
    pub min_zero: f64,
    pub best_params: Vec<f64>,
}

fn probabilities(conds: &ConditionSet<f64>, s: &BipartiteState<f64>) -> (f64, f64, f64) {
    let zeros = conds.zero_conditions();
    let (sum, max) = zeros.iter().fold((0.0, 0.0f64), |(s0, m), phi| {
        let p = phi.overlap(s).norm_sqr();
        (s0 + p, m.max(p))
    });
    (conds.target().overlap(s).norm_sqr(), sum, max)
}

fn run_search<F>(dim: usize, cfg: &NoGoConfig, eval: F) -> NoGoResult
where
    F: Fn(&[f64]) -> Option<(f64, f64, f64)> + Sync,
{
    let opts = NelderMeadOptions { xtol: 1e-12, ftol: 0.0, max_iter: cfg.iterations };
    let objective = |x: &[f64]| match eval(x) {
        Some((q, sum, _)) => q - cfg.kappa * sum,
        None => f64::NEG_INFINITY,
    };
    let runs: Vec<(Vec<f64>, f64, f64, f64)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let x0: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let mut r = maximize(objective, &x0, &vec![0.5; dim], &opts);
            for _ in 1..cfg.rounds.max(1) {
                let next = maximize(objective, &r.x, &vec![0.1; dim], &opts);
                if next.value >= r.value {
                    r = next;
                }
            }
            let (q, _, zmax) = eval(&r.x).unwrap_or((f64::NAN, f64::NAN, f64::INFINITY));
            (r.x, r.value, q, zmax)
        })
        .collect();

    let mut best = 0;
    for (k, r) in runs.iter().enumerate() {
        if r.1 > runs[best].1 {
            best = k;
        }
    }
    let feasible: Vec<&(Vec<f64>, f64, f64, f64)> =
        runs.iter().filter(|r| r.3 < cfg.feasible_tol).collect();
    let best_feasible_q = feasible.iter().map(|r| r.2).reduce(f64::max);
    NoGoResult {
        restarts: runs.len(),
        feasible_restarts: feasible.len(),
        best_feasible_q,
        best_objective: runs.get(best).map_or(f64::NAN, |r| r.1),
        q_at_best: runs.get(best).map_or(f64::NAN, |r| r.2),
        zero_at_best: runs.get(best).map_or(f64::NAN, |r| r.3),
        min_zero: runs.iter().map(|r| r.3).fold(f64::INFINITY, f64::min),
        best_params: runs.get(best).map_or_else(Vec::new, |r| r.0.clone()),
    }
}

/// Penalty search over U(d) for the maximally entangled state (I ⊗ U)|Ψ₀⟩.
/// With κ = 0 this is the unconstrained comparison.
pub fn no_go_search(sc: &HardyScenario<f64>, cfg: &NoGoConfig) -> NoGoResult {
    let j = sc.j();
    let d = sc.dim();
    let conds = condition_states(sc);
    run_search(UnitaryParam::<f64>::param_count(d), cfg, |x| {
        let u = UnitaryParam::new(d, x.to_vec()).ok()?;
        let s = maxent_state(j, &u).ok()?;
        Some(probabilities(&conds, &s))
    })
}

/// Same penalty search over all unit vectors in C^d ⊗ C^d (2d² real
/// parameters, normalized). Its optimum is the maximally nonlocal Hardy state
/// of the scenario.
pub fn general_state_search(sc: &HardyScenario<f64>, cfg: &NoGoConfig) -> NoGoResult {
    let j = sc.j();
    let n = sc.dim() * sc.dim();
    let conds = condition_states(sc);
    run_search(2 * n, cfg, |x| {
        let amps: Vec<C<f64>> = (0..n).map(|k| C::new(x[2 * k], x[2 * k + 1])).collect();
        let s = BipartiteState::normalized(j, amps).ok()?;
        Some(probabilities(&conds, &s))
    })
}

/// Unitary with U|B̂₂=−j⟩ = |B̂₁=+j⟩: completes the first column into an
/// orthonormal basis. All zero-conditions of the Bob-side family then hold.
pub fn unitary_mapping_low_to_b1_top(sc: &HardyScenario<f64>) -> Result<CMatrix<f64>> {
    let d = sc.dim();
    let mut cols = vec![sc.basis_b1().vector(0).to_vec()];
    let units: Vec<Vec<C<f64>>> = (0..d).map(|k| crate::linalg::unit_vector(d, k)).collect();
    let rest = crate::gram_schmidt::extend_orthonormal(&cols, &units, 1e-9)?;
    cols.extend(rest.basis);
    // Column d−1 (the image of |B̂₂=−j⟩) is |B̂₁=+j⟩; the others fill in order.
    let first = cols.remove(0);
    cols.push(first);
    Ok(CMatrix::from_columns(&cols))
}

/// Unitary with vanishing (−j, −j) entry: a cyclic shift with random phases.
pub fn unitary_vanishing_corner<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix<f64> {
    let mut u = CMatrix::zeros(d);
    for k in 0..d {
        let ph = rng.random::<f64>() * std::f64::consts::TAU;
        u[((k + 1) % d, k)] = C::from_polar(1.0, ph);
    }
    u
}

/// Probabilities of all Hardy events for (I ⊗ U)|Ψ₀⟩.
pub fn maxent_probabilities(sc: &HardyScenario<f64>, u: &CMatrix<f64>) -> Result<Vec<f64>> {
    let s = maxent_from_matrix(sc.j(), u)?;
    Ok(condition_states(sc).states().iter().map(|phi| phi.overlap(&s).norm_sqr()).collect())
}
