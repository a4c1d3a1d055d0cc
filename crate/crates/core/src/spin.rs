//! Spin-j operators, tilted observables m̂·Ŝ and their eigenbases.
//!
//! Basis vectors are ordered by magnetic quantum number m = j, j−1, …, −j, so
//! index `k` corresponds to m = j − k. Eigenvectors of m̂·Ŝ are fixed by the
//! rotation convention |n̂, m⟩ = exp(−iφŜ_z)·exp(−iθŜ_y)|j, m⟩, whose
//! components ⟨j, m′|n̂, m⟩ = e^{−im′φ}·d^j_{m′m}(θ) are evaluated with the
//! factorial-sum formula for the Wigner small-d matrix. That sum is accurate
//! in f64 up to roughly j = 10; beyond that cancellation between terms loses
//! digits quickly.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{HardyError, Result};
use crate::linalg::CMatrix;
use crate::scalar::{cis, creal, czero, Real, C};

/// Angles closer than this to 0 or π are rejected.
pub const THETA_EDGE_TOL: f64 = 1e-9;

/// Half-integer spin quantum number, stored exactly as 2j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SpinJ {
    two_j: u32,
}

impl SpinJ {
    pub const HALF: SpinJ = SpinJ { two_j: 1 };
    pub const ONE: SpinJ = SpinJ { two_j: 2 };
    pub const THREE_HALVES: SpinJ = SpinJ { two_j: 3 };
    pub const TWO: SpinJ = SpinJ { two_j: 4 };

    pub fn from_twice(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(HardyError::InvalidSpin("j must be positive".into()));
        }
        Ok(Self { two_j })
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    /// Hilbert-space dimension 2j + 1.
    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    pub fn value<T: Real>(self) -> T {
        T::from_u32(self.two_j).unwrap() / T::lit(2.0)
    }

    /// Magnetic quantum number of basis index `k`.
    pub fn m_at<T: Real>(self, k: usize) -> T {
        self.value::<T>() - T::from_usize_exact(k)
    }

    /// Number of Hardy conditions, 4j + 2.
    pub fn condition_count(self) -> usize {
        2 * self.two_j as usize + 2
    }

    /// Dimension of the product-state subspace S′, 4j² − 1.
    pub fn sprime_dim(self) -> usize {
        let t = self.two_j as usize;
        t * t - 1
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j.is_multiple_of(2) {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

impl FromStr for SpinJ {
    type Err = HardyError;

    /// Parses "1/2", "3/2", "2", "4/2", …
    fn from_str(s: &str) -> Result<Self> {
        let r: Ratio<u32> = s
            .trim()
            .parse()
            .map_err(|_| HardyError::InvalidSpin(format!("cannot parse {s:?} as a rational")))?;
        let twice = r * 2;
        if !twice.is_integer() {
            return Err(HardyError::InvalidSpin(format!("{s} is not a multiple of 1/2")));
        }
        Self::from_twice(twice.to_integer())
    }
}

impl TryFrom<String> for SpinJ {
    type Error = HardyError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SpinJ> for String {
    fn from(j: SpinJ) -> String {
        j.to_string()
    }
}

/// Measurement axis (sinθ cosφ, sinθ sinφ, cosθ) with θ ∈ (0, π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T> {
    theta: T,
    phi: T,
}

impl<T: Real> Direction<T> {
    /// φ is reduced into [0, 2π).
    pub fn new(theta: T, phi: T) -> Result<Self> {
        let edge = T::lit(THETA_EDGE_TOL);
        if !theta.is_finite() || theta <= edge || theta >= T::PI() - edge {
            return Err(HardyError::InvalidTheta(theta.to_f64().unwrap_or(f64::NAN)));
        }
        if !phi.is_finite() {
            return Err(HardyError::InvalidPhi(phi.to_f64().unwrap_or(f64::NAN)));
        }
        let two_pi = T::lit(2.0) * T::PI();
        let mut phi = phi % two_pi;
        if phi < T::zero() {
            phi = phi + two_pi;
        }
        if phi >= two_pi {
            phi = T::zero();
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Spin matrices in units of ħ, in the Ŝ_z eigenbasis.
#[derive(Debug, Clone)]
pub struct SpinOperators<T> {
    pub sx: CMatrix<T>,
    pub sy: CMatrix<T>,
    pub sz: CMatrix<T>,
}

/// ⟨m+1|Ŝ₊|m⟩ for the basis index `k` of m, i.e. √((j−m)(j+m+1)).
fn raising_coefficient<T: Real>(j: SpinJ, k: usize) -> T {
    let t = j.two_j() as usize;
    T::from_usize_exact(k * (t + 1 - k)).sqrt()
}

pub fn spin_operators<T: Real>(j: SpinJ) -> SpinOperators<T> {
    let d = j.dim();
    let half = T::lit(0.5);
    // Ŝ₊ has entries at (k−1, k).
    let sp = CMatrix::from_fn(d, |r, c| {
        if c >= 1 && r == c - 1 {
            creal(raising_coefficient(j, c))
        } else {
            czero()
        }
    });
    let sm = sp.adjoint();
    let sx = sp.add(&sm).scale(creal(half));
    let sy = sp.sub(&sm).scale(C::new(T::zero(), -half));
    let sz = CMatrix::from_fn(d, |r, c| if r == c { creal(j.m_at(r)) } else { czero() });
    SpinOperators { sx, sy, sz }
}

/// m̂·Ŝ for the given direction. Eigenvalues are j, j−1, …, −j.
pub fn direction_observable<T: Real>(j: SpinJ, dir: &Direction<T>) -> CMatrix<T> {
    let ops = spin_operators::<T>(j);
    let [nx, ny, nz] = dir.unit_vector();
    ops.sx
        .scale(creal(nx))
        .add(&ops.sy.scale(creal(ny)))
        .add(&ops.sz.scale(creal(nz)))
}

fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_usize_exact(k))
}

/// Wigner small-d element d^j_{m′m}(θ) = ⟨j,m′|exp(−iθŜ_y)|j,m⟩ with m′ and
/// m given by basis indices (m = j − index).
pub fn wigner_small_d<T: Real>(j: SpinJ, row: usize, col: usize, theta: T) -> T {
    let t = j.two_j() as usize;
    let (a_p, a) = (row, col);
    let (s, c) = (theta / T::lit(2.0)).sin_cos();
    let prefactor =
        (factorial::<T>(t - a_p) * factorial::<T>(a_p) * factorial::<T>(t - a) * factorial::<T>(a))
            .sqrt();
    let k_min = a_p.saturating_sub(a);
    let k_max = (t - a).min(a_p);
    let mut sum = T::zero();
    for k in k_min..=k_max {
        let sign = if (k + a - a_p) % 2 == 0 { T::one() } else { -T::one() };
        let denom = factorial::<T>(t - a - k)
            * factorial::<T>(k)
            * factorial::<T>(a_p - k)
            * factorial::<T>(k + a - a_p);
        let cos_pow = (t + a_p) - 2 * k - a;
        let sin_pow = 2 * k + a - a_p;
        sum = sum + sign * c.powi(cos_pow as i32) * s.powi(sin_pow as i32) / denom;
    }
    prefactor * sum
}

/// Ordered eigenvectors of m̂·Ŝ; `vectors[k]` has eigenvalue m = j − k.
#[derive(Debug, Clone)]
pub struct EigenBasis<T> {
    j: SpinJ,
    direction: Direction<T>,
    vectors: Vec<Vec<C<T>>>,
}

impl<T: Real> EigenBasis<T> {
    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn direction(&self) -> &Direction<T> {
        &self.direction
    }

    pub fn vector(&self, k: usize) -> &[C<T>] {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[Vec<C<T>>] {
        &self.vectors
    }

    /// Component `k` of eigenvector `i`, i.e. ⟨ẑ, j−k | n̂, j−i⟩. With 1-based
    /// indices this is the coefficient usually written a_{i+1, k+1}.
    pub fn coefficient(&self, i: usize, k: usize) -> C<T> {
        self.vectors[i][k]
    }

    /// |⟨ẑ, j−k | n̂, j−i⟩|² laid out as `[i][k]`.
    pub fn overlap_moduli_sq(&self) -> Vec<Vec<T>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(|x| x.norm_sqr()).collect())
            .collect()
    }
}

/// Eigenbasis of m̂·Ŝ by the rotation construction.
pub fn eigenbasis<T: Real>(j: SpinJ, dir: &Direction<T>) -> EigenBasis<T> {
    let d = j.dim();
    let vectors = (0..d)
        .map(|col| {
            (0..d)
                .map(|row| {
                    let m_row = j.m_at::<T>(row);
                    cis(-m_row * dir.phi()) * wigner_small_d(j, row, col, dir.theta())
                })
                .collect()
        })
        .collect();
    EigenBasis { j, direction: *dir, vectors }
}

/// Eigenbasis of m̂·Ŝ by direct Hermitian diagonalization. Each vector is
/// only defined up to a phase; the phase is fixed so that its largest
/// component is real positive.
pub fn numerical_eigenbasis<T: Real>(j: SpinJ, dir: &Direction<T>) -> (Vec<T>, EigenBasis<T>) {
    let eig = direction_observable(j, dir).hermitian_eigen();
    let d = j.dim();
    let vectors = (0..d)
        .map(|k| {
            let mut v = eig.vectors.column(k);
            let pivot = v
                .iter()
                .copied()
                .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
                .unwrap();
            let phase = pivot.conj() / pivot.norm();
            v.iter_mut().for_each(|x| *x = *x * phase);
            v
        })
        .collect();
    (eig.values, EigenBasis { j, direction: *dir, vectors })
}
