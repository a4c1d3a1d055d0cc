//! Reduced states, Schmidt spectra and local-unitary invariants of
//! bipartite pure states, plus sampling scans of the invariants reachable by
//! Hardy states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HardyError, Result};
use crate::hardy::{hardy_family, hardy_state_max, BipartiteState, HardyScenario};
use crate::linalg::{normalize, CMatrix};
use crate::scalar::{cis, czero, creal, Real, C};
use crate::spin::SpinJ;
use crate::unitary::UnitaryParam;

/// ρ_B = Tr_A |ψ⟩⟨ψ|.
pub fn reduced_density<T: Real>(state: &BipartiteState<T>) -> CMatrix<T> {
    let d = state.j().dim();
    CMatrix::from_fn(d, |b, b2| {
        (0..d).fold(czero(), |acc, a| acc + state.amplitude(a, b) * state.amplitude(a, b2).conj())
    })
}

/// Squared Schmidt coefficients, descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum<T> {
    pub values: Vec<T>,
}

impl<T: Real> SchmidtSpectrum<T> {
    /// max λ − min λ
    pub fn spread(&self) -> T {
        let hi = self.values.first().copied().unwrap_or(T::zero());
        let lo = self.values.last().copied().unwrap_or(T::zero());
        hi - lo
    }
}

pub fn schmidt_spectrum<T: Real>(state: &BipartiteState<T>) -> SchmidtSpectrum<T> {
    SchmidtSpectrum { values: reduced_density(state).hermitian_eigen().values }
}

/// Elementary symmetric polynomials e₂ … e_d of the Schmidt spectrum.
/// For d = 2 this is the single invariant I = λ(1−λ); for d = 3 it is
/// (I₁, I₂) = (λ₁λ₂+λ₂λ₃+λ₃λ₁, λ₁λ₂λ₃).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantVector<T> {
    pub e: Vec<T>,
}

pub fn elementary_symmetric<T: Real>(values: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); values.len() + 1];
    e[0] = T::one();
    for &x in values {
        for k in (1..e.len()).rev() {
            e[k] = e[k] + e[k - 1] * x;
        }
    }
    e
}

pub fn su_invariants<T: Real>(state: &BipartiteState<T>) -> InvariantVector<T> {
    let e = elementary_symmetric(&schmidt_spectrum(state).values);
    InvariantVector { e: e[2..].to_vec() }
}

/// Upper ends of the invariant ranges, attained by the maximally entangled
/// state: e_k(1/d, …, 1/d) = C(d,k)/d^k.
pub fn invariant_upper_bounds(d: usize) -> Vec<f64> {
    let uniform = vec![1.0 / d as f64; d];
    elementary_symmetric(&uniform)[2..].to_vec()
}

/// Spin-½ invariant of ψ_max as a function of the tilt angles.
pub fn invariant_spin_half<T: Real>(theta1: T, theta2: T) -> T {
    let (c1, c2) = (theta1.cos(), theta2.cos());
    let den = T::lit(3.0) - c1 - c2 - c1 * c2;
    (theta1.sin() * theta2.sin()).powi(2) / (den * den)
}

/// (1/√d) Σ_m |m⟩⊗|m⟩
pub fn standard_maxent<T: Real>(j: SpinJ) -> BipartiteState<T> {
    let d = j.dim();
    let s = T::one() / T::from_usize_exact(d).sqrt();
    let mut amps = vec![czero(); d * d];
    for m in 0..d {
        amps[m * d + m] = creal(s);
    }
    BipartiteState::normalized(j, amps).expect("non-zero")
}

/// (I ⊗ U)|Ψ₀⟩ for a materialized unitary.
pub fn maxent_from_matrix<T: Real>(j: SpinJ, u: &CMatrix<T>) -> Result<BipartiteState<T>> {
    let d = j.dim();
    if u.dim() != d {
        return Err(HardyError::DimensionMismatch { index: 0, expected: d, found: u.dim() });
    }
    let defect = u.unitarity_defect();
    if !(defect < T::lit(1e-10)) {
        return Err(HardyError::OutOfRange(format!(
            "unitarity defect {}",
            defect.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let s = T::one() / T::from_usize_exact(d).sqrt();
    // amplitude (a, b) = U_{b a}/√d
    let amps = (0..d * d).map(|i| u[(i % d, i / d)] * s).collect();
    BipartiteState::new(j, amps)
}

pub fn maxent_state<T: Real>(j: SpinJ, u: &UnitaryParam<T>) -> Result<BipartiteState<T>> {
    maxent_from_matrix(j, &u.materialize())
}

/// Applies U_A ⊗ U_B to a state.
pub fn apply_local<T: Real>(
    state: &BipartiteState<T>,
    ua: &CMatrix<T>,
    ub: &CMatrix<T>,
) -> Result<BipartiteState<T>> {
    let d = state.j().dim();
    let mut amps = vec![czero(); d * d];
    for a in 0..d {
        for b in 0..d {
            let mut acc = czero();
            for a2 in 0..d {
                for b2 in 0..d {
                    acc = acc + ua[(a, a2)] * ub[(b, b2)] * state.amplitude(a2, b2);
                }
            }
            amps[a * d + b] = acc;
        }
    }
    BipartiteState::normalized(state.j(), amps)
}

#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    fn new(hi: f64, bins: usize) -> Self {
        Self { lo: 0.0, hi, counts: vec![0; bins.max(1)] }
    }

    fn add(&mut self, x: f64) {
        let n = self.counts.len();
        let k = ((x - self.lo) / (self.hi - self.lo) * n as f64).floor();
        let k = if k.is_finite() { (k.max(0.0) as usize).min(n - 1) } else { 0 };
        self.counts[k] += 1;
    }

    fn merge(mut self, other: &Self) -> Self {
        self.counts.iter_mut().zip(&other.counts).for_each(|(a, b)| *a += b);
        self
    }
}

/// Empirical range of the invariants over one sampling strategy.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantRange {
    pub label: String,
    pub samples: usize,
    /// Grid points skipped because ψ_max was numerically undefined there.
    pub skipped: usize,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub histograms: Vec<Histogram>,
}

impl InvariantRange {
    fn empty(label: &str, d: usize, bins: usize) -> Self {
        let hi = invariant_upper_bounds(d);
        Self {
            label: label.to_string(),
            samples: 0,
            skipped: 0,
            min: vec![f64::INFINITY; hi.len()],
            max: vec![f64::NEG_INFINITY; hi.len()],
            histograms: hi.iter().map(|&h| Histogram::new(h, bins)).collect(),
        }
    }

    fn add(&mut self, inv: &[f64]) {
        self.samples += 1;
        for (k, &x) in inv.iter().enumerate() {
            self.min[k] = self.min[k].min(x);
            self.max[k] = self.max[k].max(x);
            self.histograms[k].add(x);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.skipped += other.skipped;
        for k in 0..self.min.len() {
            self.min[k] = self.min[k].min(other.min[k]);
            self.max[k] = self.max[k].max(other.max[k]);
        }
        self.histograms =
            self.histograms.into_iter().zip(&other.histograms).map(|(a, b)| a.merge(b)).collect();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageConfig {
    /// ψ_max is evaluated on an n×n grid θ_k = (k+½)π/n, φ = 0.
    pub grid_n: usize,
    /// Random scenarios for family sampling (j ≥ 1 only).
    pub family_scenarios: usize,
    /// Random family states per scenario.
    pub draws_per_scenario: usize,
    pub bins: usize,
    pub seed: u64,
}

impl Default for CoverageConfig {
    fn default() -> Self {
        Self { grid_n: 100, family_scenarios: 250_000, draws_per_scenario: 1, bins: 20, seed: 7 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub j: SpinJ,
    pub psi_max: InvariantRange,
    /// Absent for spin ½, where S′ is trivial.
    pub family: Option<InvariantRange>,
}

fn invariants_f64(state: &BipartiteState<f64>) -> Vec<f64> {
    su_invariants(state).e
}

/// Samples the invariants of ψ_max on an angle grid and, for j ≥ 1, of random
/// members v₀|ψ_max⟩ + Σ vᵢ|eᵢ⟩ of the Hardy family at random scenarios.
///
/// Family draws use |v₀| ~ U(0,1) with a uniform phase and the remaining
/// weight √(1−|v₀|²) on a uniformly random direction in S′.
pub fn invariant_coverage_scan(j: SpinJ, cfg: &CoverageConfig) -> Result<CoverageReport> {
    let d = j.dim();
    let n = cfg.grid_n;
    if n == 0 {
        return Err(HardyError::EmptyInput);
    }
    let step = std::f64::consts::PI / n as f64;
    let psi_max = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (t1, t2) = ((i / n) as f64 + 0.5, (i % n) as f64 + 0.5);
            let mut r = InvariantRange::empty("psi_max", d, cfg.bins);
            let sc = HardyScenario::from_angles(j, t1 * step, t2 * step, 0.0, 0.0)?;
            match hardy_state_max(&sc) {
                Ok(psi) => r.add(&invariants_f64(&psi)),
                Err(HardyError::DegenerateScenario(_)) => r.skipped += 1,
                Err(e) => return Err(e),
            }
            Ok(r)
        })
        .try_reduce(|| InvariantRange::empty("psi_max", d, cfg.bins), |a, b| Ok(a.merge(b)))?;

    let family = if j.sprime_dim() == 0 || cfg.family_scenarios == 0 {
        None
    } else {
        let dim_s = j.sprime_dim();
        let r = (0..cfg.family_scenarios)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(i as u64);
                let pi = std::f64::consts::PI;
                let t1 = rng.random::<f64>() * (pi - 2e-6) + 1e-6;
                let t2 = rng.random::<f64>() * (pi - 2e-6) + 1e-6;
                let p1 = rng.random::<f64>() * 2.0 * pi;
                let p2 = rng.random::<f64>() * 2.0 * pi;
                let sc = HardyScenario::from_angles(j, t1, t2, p1, p2)?;
                let mut r = InvariantRange::empty("family", d, cfg.bins);
                let fam = match hardy_family(&sc) {
                    Ok(f) => f,
                    Err(HardyError::DegenerateScenario(_)) => {
                        r.skipped += 1;
                        return Ok(r);
                    }
                    Err(e) => return Err(e),
                };
                for _ in 0..cfg.draws_per_scenario {
                    let r0 = rng.random::<f64>().max(1e-6);
                    let v0 = cis(rng.random::<f64>() * 2.0 * pi) * r0;
                    let mut w: Vec<C<f64>> = (0..dim_s)
                        .map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                        .collect();
                    normalize(&mut w);
                    let scale = (1.0 - r0 * r0).sqrt();
                    w.iter_mut().for_each(|x| *x *= scale);
                    let s = crate::hardy::general_hardy_state(&fam, v0, &w)?;
                    r.add(&invariants_f64(&s));
                }
                Ok(r)
            })
            .try_reduce(|| InvariantRange::empty("family", d, cfg.bins), |a, b| Ok(a.merge(b)))?;
        Some(r)
    };
    Ok(CoverageReport { j, psi_max, family })
}
