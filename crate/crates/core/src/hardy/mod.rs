//! Hardy scenarios for two spin-j particles.
//!
//! Alice measures Â₁ = m̂·Ŝ or Â₂ = Ŝ_z, Bob measures B̂₁ = n̂·Ŝ or B̂₂ = Ŝ_z.
//! The 4j+2 Hardy conditions are encoded as product "condition states"
//! |Φ₁⟩ … |Φ_{4j+2}⟩: a shared state satisfies the test when it is orthogonal
//! to the first 4j+1 of them and has nonzero overlap q with the last one,
//! |Â₂=−j⟩⊗|B̂₂=−j⟩.

mod appendix;
mod closed_form;
mod family;

pub use appendix::{appendix_a_check, AppendixAReport};
pub use closed_form::{
    optimal_cos_theta, q2_symmetric, q_closed_form, q_coefficient_form, q_one, q_spin_half,
    q_three_halves, q_two, reported_optimal_theta_deg, Q_MAX,
};
pub use family::{general_hardy_state, hardy_family, product_families, HardyFamily, SPrimeSource};

use serde::Serialize;

use crate::error::{HardyError, Result};
use crate::gram_schmidt::{gram_schmidt, project_out, DEFAULT_DROP_TOL};
use crate::linalg::{inner, kron, norm, norm_sqr, unit_vector};
use crate::scalar::{creal, Real, C};
use crate::spin::{eigenbasis, Direction, EigenBasis, SpinJ};

/// Default threshold below which a zero-condition probability counts as zero.
pub const DEFAULT_TOL_ZERO: f64 = 1e-18;
/// Default threshold above which q counts as strictly positive.
pub const DEFAULT_TOL_POS: f64 = 1e-12;
/// Residual norm below which ψ_max is considered undefined.
pub const DEGENERATE_RESIDUAL: f64 = 1e-9;

pub(crate) fn norm_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(100.0))
}

/// Spin j with the two tilted observables Â₁ (direction `dir_a`) and B̂₁
/// (direction `dir_b`); Â₂ = B̂₂ = Ŝ_z.
#[derive(Debug, Clone)]
pub struct HardyScenario<T> {
    j: SpinJ,
    basis_a1: EigenBasis<T>,
    basis_b1: EigenBasis<T>,
}

impl<T: Real> HardyScenario<T> {
    pub fn new(j: SpinJ, dir_a: Direction<T>, dir_b: Direction<T>) -> Self {
        Self { j, basis_a1: eigenbasis(j, &dir_a), basis_b1: eigenbasis(j, &dir_b) }
    }

    /// Angles in radians.
    pub fn from_angles(j: SpinJ, theta1: T, theta2: T, phi1: T, phi2: T) -> Result<Self> {
        Ok(Self::new(j, Direction::new(theta1, phi1)?, Direction::new(theta2, phi2)?))
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn dir_a(&self) -> &Direction<T> {
        self.basis_a1.direction()
    }

    pub fn dir_b(&self) -> &Direction<T> {
        self.basis_b1.direction()
    }

    pub fn basis_a1(&self) -> &EigenBasis<T> {
        &self.basis_a1
    }

    pub fn basis_b1(&self) -> &EigenBasis<T> {
        &self.basis_b1
    }

    /// Ŝ_z eigenvector |m = j − k⟩.
    pub fn z_vector(&self, k: usize) -> Vec<C<T>> {
        unit_vector(self.dim(), k)
    }
}

/// Pure state of two spin-j particles; amplitude of |a⟩⊗|b⟩ at `a·d + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState<T> {
    j: SpinJ,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> BipartiteState<T> {
    /// Requires unit norm (to 1e-12 in f64).
    pub fn new(j: SpinJ, amplitudes: Vec<C<T>>) -> Result<Self> {
        Self::check_len(j, &amplitudes)?;
        let n2 = norm_sqr(&amplitudes);
        if (n2 - T::one()).abs() > norm_tol::<T>() {
            return Err(HardyError::NotNormalized(n2.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { j, amplitudes })
    }

    /// Normalizes `amplitudes`; fails on the zero vector.
    pub fn normalized(j: SpinJ, mut amplitudes: Vec<C<T>>) -> Result<Self> {
        Self::check_len(j, &amplitudes)?;
        let n = norm(&amplitudes);
        if !(n > T::zero()) || !n.is_finite() {
            return Err(HardyError::NotNormalized(0.0));
        }
        let inv = T::one() / n;
        amplitudes.iter_mut().for_each(|x| *x = *x * inv);
        Ok(Self { j, amplitudes })
    }

    pub fn product(j: SpinJ, a: &[C<T>], b: &[C<T>]) -> Result<Self> {
        Self::normalized(j, kron(a, b))
    }

    fn check_len(j: SpinJ, amplitudes: &[C<T>]) -> Result<()> {
        let d = j.dim();
        if amplitudes.len() != d * d {
            return Err(HardyError::DimensionMismatch {
                index: 0,
                expected: d * d,
                found: amplitudes.len(),
            });
        }
        Ok(())
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amplitudes
    }

    pub fn amplitude(&self, a: usize, b: usize) -> C<T> {
        self.amplitudes[a * self.j.dim() + b]
    }

    /// ⟨self|other⟩
    pub fn overlap(&self, other: &Self) -> C<T> {
        inner(&self.amplitudes, &other.amplitudes)
    }
}

/// The 4j+2 condition states in the order of the Hardy conditions.
#[derive(Debug, Clone)]
pub struct ConditionSet<T> {
    states: Vec<BipartiteState<T>>,
}

impl<T: Real> ConditionSet<T> {
    pub fn states(&self) -> &[BipartiteState<T>] {
        &self.states
    }

    /// |Φ₁⟩ … |Φ_{4j+1}⟩
    pub fn zero_conditions(&self) -> &[BipartiteState<T>] {
        &self.states[..self.states.len() - 1]
    }

    /// |Φ_{4j+2}⟩ = |Â₂=−j⟩⊗|B̂₂=−j⟩
    pub fn target(&self) -> &BipartiteState<T> {
        self.states.last().expect("non-empty condition set")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub(crate) fn amplitude_vectors(&self, range: std::ops::Range<usize>) -> Vec<Vec<C<T>>> {
        self.states[range].iter().map(|s| s.amplitudes.clone()).collect()
    }
}

/// Builds |Â₁=j⟩⊗|B̂₁=j⟩; |Â₁=m⟩⊗|B̂₂=−j⟩ for m = j−1 … −j;
/// |Â₂=−j⟩⊗|B̂₁=m⟩ for m = j−1 … −j; and finally |Â₂=−j⟩⊗|B̂₂=−j⟩.
pub fn condition_states<T: Real>(sc: &HardyScenario<T>) -> ConditionSet<T> {
    let j = sc.j();
    let d = sc.dim();
    let z_low = sc.z_vector(d - 1);
    let product = |a: &[C<T>], b: &[C<T>]| BipartiteState { j, amplitudes: kron(a, b) };

    let mut states = Vec::with_capacity(j.condition_count());
    states.push(product(sc.basis_a1.vector(0), sc.basis_b1.vector(0)));
    for k in 1..d {
        states.push(product(sc.basis_a1.vector(k), &z_low));
    }
    for k in 1..d {
        states.push(product(&z_low, sc.basis_b1.vector(k)));
    }
    states.push(product(&z_low, &z_low));
    ConditionSet { states }
}

/// Orthonormal basis of S = span(|Φ₁⟩ … |Φ_{4j+1}⟩), built in condition order.
pub fn hardy_subspace_basis<T: Real>(conds: &ConditionSet<T>) -> Vec<Vec<C<T>>> {
    let zero = conds.amplitude_vectors(0..conds.len() - 1);
    gram_schmidt(&zero, T::lit(DEFAULT_DROP_TOL))
        .expect("non-empty condition set")
        .basis
}

/// Maximally nonlocal Hardy state: the normalized part of |Φ_{4j+2}⟩
/// orthogonal to S, with ⟨Φ_{4j+2}|ψ⟩ real positive.
pub fn hardy_state_max<T: Real>(sc: &HardyScenario<T>) -> Result<BipartiteState<T>> {
    let conds = condition_states(sc);
    let s_basis = hardy_subspace_basis(&conds);
    hardy_state_max_from(&conds, &s_basis)
}

pub(crate) fn hardy_state_max_from<T: Real>(
    conds: &ConditionSet<T>,
    s_basis: &[Vec<C<T>>],
) -> Result<BipartiteState<T>> {
    let target = conds.target();
    let mut r = target.amplitudes.clone();
    project_out(&mut r, s_basis);
    let n = norm(&r);
    if !(n >= T::lit(DEGENERATE_RESIDUAL)) {
        return Err(HardyError::DegenerateScenario(n.to_f64().unwrap_or(f64::NAN)));
    }
    let ov = inner(&target.amplitudes, &r);
    let phase = if ov.norm() > T::zero() { ov.conj() / ov.norm() } else { creal(T::one()) };
    let scale = phase / n;
    r.iter_mut().for_each(|x| *x = *x * scale);
    Ok(BipartiteState { j: target.j, amplitudes: r })
}

/// q = |⟨state|Â₂=−j, B̂₂=−j⟩|², the probability of the last Hardy event.
pub fn q_value<T: Real>(sc: &HardyScenario<T>, state: &BipartiteState<T>) -> T {
    debug_assert_eq!(sc.j(), state.j());
    state.amplitudes.last().expect("non-empty state").norm_sqr()
}

/// 1 − Σᵢ |⟨Φ′ᵢ|Φ_{4j+2}⟩|² over an orthonormal basis {Φ′ᵢ} of S.
pub fn q_from_projection<T: Real>(sc: &HardyScenario<T>) -> T {
    let conds = condition_states(sc);
    let target = conds.target().amplitudes();
    let s = hardy_subspace_basis(&conds);
    T::one() - s.iter().map(|b| inner(b, target).norm_sqr()).sum::<T>()
}

/// Pipeline shortcut: q of ψ_max at the given angles (radians), or `None`
/// if the angles are invalid or the scenario degenerates.
pub fn q_max_at<T: Real>(j: SpinJ, theta1: T, theta2: T, phi1: T, phi2: T) -> Option<T> {
    let sc = HardyScenario::from_angles(j, theta1, theta2, phi1, phi2).ok()?;
    hardy_state_max(&sc).ok().map(|psi| q_value(&sc, &psi))
}

/// Probabilities of all 4j+2 Hardy events for a given state.
#[derive(Debug, Clone, Serialize)]
pub struct HardyReport<T> {
    pub probabilities: Vec<T>,
    pub q: T,
    pub max_zero_probability: T,
    /// 0-based indices of zero-conditions at or above `tol_zero`.
    pub violated: Vec<usize>,
    pub q_positive: bool,
    pub passed: bool,
}

pub fn verify_hardy_conditions<T: Real>(
    sc: &HardyScenario<T>,
    state: &BipartiteState<T>,
    tol_zero: T,
    tol_pos: T,
) -> HardyReport<T> {
    let conds = condition_states(sc);
    let probabilities: Vec<T> =
        conds.states().iter().map(|phi| phi.overlap(state).norm_sqr()).collect();
    let (zeros, last) = probabilities.split_at(probabilities.len() - 1);
    let q = last[0];
    let violated: Vec<usize> =
        zeros.iter().enumerate().filter(|(_, &p)| !(p < tol_zero)).map(|(i, _)| i).collect();
    let max_zero_probability = zeros.iter().copied().fold(T::zero(), T::max);
    let q_positive = q > tol_pos;
    HardyReport {
        passed: violated.is_empty() && q_positive,
        probabilities,
        q,
        max_zero_probability,
        violated,
        q_positive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram_schmidt::rank;
    use std::f64::consts::PI;

    fn scenario(j: SpinJ, t1: f64, t2: f64, p1: f64, p2: f64) -> HardyScenario<f64> {
        HardyScenario::from_angles(j, t1, t2, p1, p2).unwrap()
    }

    #[test]
    fn spin_half_condition_states_match_definition() {
        let sc = scenario(SpinJ::HALF, 1.0, 2.0, 0.3, 0.4);
        let conds = condition_states(&sc);
        assert_eq!(conds.len(), 4);
        let a = sc.basis_a1();
        let b = sc.basis_b1();
        let z = sc.z_vector(1);
        let expect = [
            kron(a.vector(0), b.vector(0)),
            kron(a.vector(1), &z),
            kron(&z, b.vector(1)),
            kron(&z, &z),
        ];
        for (s, e) in conds.states().iter().zip(expect.iter()) {
            assert_eq!(s.amplitudes(), e.as_slice());
        }
    }

    #[test]
    fn condition_count_and_norms() {
        for two_j in 1..=6 {
            let j = SpinJ::from_twice(two_j).unwrap();
            let conds = condition_states(&scenario(j, 0.7, 2.1, 1.0, 4.0));
            assert_eq!(conds.len(), 2 * two_j as usize + 2);
            for s in conds.states() {
                assert!((norm_sqr(s.amplitudes()) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_one_first_five_span_five_dims() {
        let sc = scenario(SpinJ::ONE, 0.9, 2.2, 0.1, 5.0);
        let conds = condition_states(&sc);
        assert_eq!(rank(&conds.amplitude_vectors(0..5), 1e-9).unwrap(), 5);
        assert_eq!(rank(&conds.amplitude_vectors(0..6), 1e-9).unwrap(), 6);
    }

    #[test]
    fn psi_max_is_orthogonal_and_phase_fixed() {
        let sc = scenario(SpinJ::THREE_HALVES, 1.3, 1.9, 2.0, 0.5);
        let psi = hardy_state_max(&sc).unwrap();
        let conds = condition_states(&sc);
        for phi in conds.zero_conditions() {
            assert!(phi.overlap(&psi).norm_sqr() < 1e-20);
        }
        let ov = conds.target().overlap(&psi);
        assert!(ov.re > 0.0 && ov.im.abs() < 1e-15);
        assert!((q_value(&sc, &psi) - q_from_projection(&sc)).abs() < 1e-12);
    }

    #[test]
    fn spin_half_equator_gives_one_twelfth() {
        let q = q_max_at(SpinJ::HALF, PI / 2.0, PI / 2.0, 0.0, 0.0).unwrap();
        assert!((q - 1.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn spin_one_equator_value() {
        let q = q_max_at(SpinJ::ONE, PI / 2.0, PI / 2.0, 0.0, 0.0).unwrap();
        assert!((q - 2.25 / 28.0).abs() < 1e-14);
    }

    #[test]
    fn spin_half_optimum() {
        let t = (5f64.sqrt() - 2.0).acos();
        let q = q_max_at(SpinJ::HALF, t, t, 0.0, 0.0).unwrap();
        assert!((q - (5.0 * 5f64.sqrt() - 11.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn target_itself_has_q_one_and_fails() {
        let sc = scenario(SpinJ::ONE, 1.0, 1.0, 0.0, 0.0);
        let conds = condition_states(&sc);
        assert!((q_value(&sc, conds.target()) - 1.0).abs() < 1e-15);
        let first = conds.states()[0].clone();
        let rep = verify_hardy_conditions(&sc, &first, DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
        assert!(!rep.passed);
        assert!((rep.probabilities[0] - 1.0).abs() < 1e-12);
        assert!(rep.violated.contains(&0));
    }

    #[test]
    fn psi_max_passes_verification() {
        for two_j in 1..=4 {
            let sc = scenario(SpinJ::from_twice(two_j).unwrap(), 1.7, 2.0, 0.2, 3.3);
            let psi = hardy_state_max(&sc).unwrap();
            let rep = verify_hardy_conditions(&sc, &psi, DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
            assert!(rep.passed, "{rep:?}");
            assert!(rep.q > 0.0 && rep.q <= 0.0901699437494743);
        }
    }

    #[test]
    fn state_constructor_validates() {
        let j = SpinJ::HALF;
        let c = |x: f64| C::new(x, 0.0);
        assert!(BipartiteState::new(j, vec![c(1.0), c(0.0), c(0.0)]).is_err());
        assert!(BipartiteState::new(j, vec![c(1.0), c(1.0), c(0.0), c(0.0)]).is_err());
        let s = BipartiteState::normalized(j, vec![c(1.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!((norm_sqr(s.amplitudes()) - 1.0).abs() < 1e-15);
        assert!(BipartiteState::<f64>::normalized(j, vec![c(0.0); 4]).is_err());
    }

    #[test]
    fn f32_pipeline_tracks_f64() {
        let t = (5f64.sqrt() - 2.0).acos();
        let q32 = q_max_at(SpinJ::ONE, (std::f64::consts::PI - t) as f32, (std::f64::consts::PI - t) as f32, 0.0, 0.0)
            .unwrap();
        assert!((q32 as f64 - 0.0901699437494743).abs() < 1e-5);
    }
}
