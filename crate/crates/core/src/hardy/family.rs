//! The general Hardy family v₀|ψ_max⟩ + Σ vᵢ|eᵢ⟩, where {eᵢ} spans the
//! product-state subspace S′ of the Hardy subspace.
//!
//! S′ is spanned by two families of product states:
//! |χ⟩⊗|B̂₂=m⟩ with χ ⊥ {|Â₁=+j⟩, |Â₂=−j⟩} and m ≠ −j, and
//! |Â₂=m⟩⊗|η⟩ with η ⊥ {|B̂₁=+j⟩, |B̂₂=−j⟩} and m ≠ −j.
//! Each is automatically orthogonal to every condition state including the
//! q-target, so S′ ⊂ S^⊥ ∩ ψ_max^⊥, and the two have equal dimension 4j²−1.

use log::warn;

use crate::error::{HardyError, Result};
use crate::gram_schmidt::{extend_orthonormal, gram_schmidt, DEFAULT_DROP_TOL};
use crate::linalg::{kron, unit_vector};
use crate::scalar::{Real, C};
use crate::spin::SpinJ;

use super::{
    condition_states, hardy_state_max_from, hardy_subspace_basis, BipartiteState, HardyScenario,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SPrimeSource {
    ProductFamilies,
    /// Fallback: orthonormal complement of S ⊕ ψ_max.
    DenseComplement,
}

#[derive(Debug, Clone)]
pub struct HardyFamily<T> {
    pub scenario: HardyScenario<T>,
    pub psi_max: BipartiteState<T>,
    /// Orthonormal basis of S′, 4j² − 1 vectors.
    pub sprime_basis: Vec<BipartiteState<T>>,
    pub source: SPrimeSource,
}

impl<T: Real> HardyFamily<T> {
    pub fn j(&self) -> SpinJ {
        self.scenario.j()
    }
}

/// Orthonormal basis of the complement of span{u, w} in C^d.
fn complement_of_pair<T: Real>(d: usize, u: &[C<T>], w: &[C<T>]) -> Vec<Vec<C<T>>> {
    let tol = T::lit(DEFAULT_DROP_TOL);
    let pair = gram_schmidt(&[u.to_vec(), w.to_vec()], tol).expect("non-empty").basis;
    let units: Vec<Vec<C<T>>> = (0..d).map(|k| unit_vector(d, k)).collect();
    extend_orthonormal(&pair, &units, tol).expect("non-empty").basis
}

/// Product states of the two S′ families, χ-family first.
///
/// For j = 1 there is one χ and one η, and this returns the four states
/// |Â₂=+1⟩⊗|η⟩-type and |χ⟩⊗|B̂₂=+1⟩-type products (in χ-first order).
/// For j = 3/2 there are twelve.
pub fn product_families<T: Real>(sc: &HardyScenario<T>) -> Vec<Vec<C<T>>> {
    let d = sc.dim();
    let z_low = sc.z_vector(d - 1);
    let chis = complement_of_pair(d, &z_low, sc.basis_a1().vector(0));
    let etas = complement_of_pair(d, &z_low, sc.basis_b1().vector(0));
    let mut out = Vec::with_capacity(2 * (d - 1) * d.saturating_sub(2));
    for m in 0..d - 1 {
        for chi in &chis {
            out.push(kron(chi, &sc.z_vector(m)));
        }
    }
    for m in 0..d - 1 {
        for eta in &etas {
            out.push(kron(&sc.z_vector(m), eta));
        }
    }
    out
}

pub fn hardy_family<T: Real>(sc: &HardyScenario<T>) -> Result<HardyFamily<T>> {
    let j = sc.j();
    let d = sc.dim();
    let expected = j.sprime_dim();
    let tol = T::lit(DEFAULT_DROP_TOL);

    let conds = condition_states(sc);
    let mut prefix = hardy_subspace_basis(&conds);
    let psi_max = hardy_state_max_from(&conds, &prefix)?;
    prefix.push(psi_max.amplitudes().to_vec());

    let into_states = |basis: Vec<Vec<C<T>>>| {
        basis.into_iter().map(|v| BipartiteState { j, amplitudes: v }).collect::<Vec<_>>()
    };

    let products = product_families(sc);
    if expected == 0 {
        return Ok(HardyFamily {
            scenario: sc.clone(),
            psi_max,
            sprime_basis: Vec::new(),
            source: SPrimeSource::ProductFamilies,
        });
    }
    let from_products = extend_orthonormal(&prefix, &products, tol)?;
    if from_products.rank() == expected {
        return Ok(HardyFamily {
            scenario: sc.clone(),
            psi_max,
            sprime_basis: into_states(from_products.basis),
            source: SPrimeSource::ProductFamilies,
        });
    }
    warn!(
        "S' product families reached rank {} (expected {expected}); using dense complement",
        from_products.rank()
    );
    let units: Vec<Vec<C<T>>> = (0..d * d).map(|k| unit_vector(d * d, k)).collect();
    let dense = extend_orthonormal(&prefix, &units, tol)?;
    if dense.rank() != expected {
        return Err(HardyError::SPrimeRank { expected, found: dense.rank() });
    }
    Ok(HardyFamily {
        scenario: sc.clone(),
        psi_max,
        sprime_basis: into_states(dense.basis),
        source: SPrimeSource::DenseComplement,
    })
}

/// Normalized v₀|ψ_max⟩ + Σ vᵢ|eᵢ⟩. Since the terms are orthonormal,
/// q = |v₀|²/(|v₀|² + Σ|vᵢ|²) · q(ψ_max).
pub fn general_hardy_state<T: Real>(
    fam: &HardyFamily<T>,
    v0: C<T>,
    v: &[C<T>],
) -> Result<BipartiteState<T>> {
    if !(v0.norm() > T::lit(1e-12)) {
        return Err(HardyError::VanishingV0(v0.norm().to_f64().unwrap_or(f64::NAN)));
    }
    if v.len() != fam.sprime_basis.len() {
        return Err(HardyError::DimensionMismatch {
            index: 0,
            expected: fam.sprime_basis.len(),
            found: v.len(),
        });
    }
    let mut amps: Vec<C<T>> = fam.psi_max.amplitudes().iter().map(|x| x * v0).collect();
    for (e, c) in fam.sprime_basis.iter().zip(v) {
        for (a, x) in amps.iter_mut().zip(e.amplitudes()) {
            *a = *a + x * c;
        }
    }
    BipartiteState::normalized(fam.j(), amps)
}
