use serde::Serialize;

use crate::error::{HardyError, Result};
use crate::gram_schmidt::rank;
use crate::linalg::CMatrix;
use crate::scalar::{czero, Real, C};
use crate::spin::SpinJ;

use super::HardyScenario;

/// Linear-independence check for the five spin-1 zero-condition states.
#[derive(Debug, Clone, Serialize)]
pub struct AppendixAReport {
    pub theta1: f64,
    pub theta2: f64,
    /// det of the upper 4×4 block of M, as (re, im).
    pub determinant: (f64, f64),
    pub determinant_abs: f64,
    /// sin²(θ₁/2)·sin²(θ₂/2), the modulus of the block determinant.
    pub factorized_abs: f64,
    /// (2 + cos θ₁)·sin²(θ₁/2)·sin²(θ₂/2)/2, the printed closed form.
    pub printed_expression_abs: f64,
    pub rank: usize,
}

/// Builds the 5×4 coefficient matrix
///
/// ```text
/// a21 a31  0   0
/// a22 a32  0   0
///  0   0  b21 b31
///  0   0  b22 b32
/// a23 a33 b23 b33
/// ```
///
/// whose null space would give a linear dependence among |Φ₂⟩ … |Φ₅⟩ once
/// the |Φ₁⟩ coefficient is forced to zero. Returns the determinant of its
/// leading 4×4 block and the rank of the whole matrix.
pub fn appendix_a_check<T: Real>(sc: &HardyScenario<T>) -> Result<AppendixAReport> {
    if sc.j() != SpinJ::ONE {
        return Err(HardyError::UnsupportedSpin(sc.j().to_string()));
    }
    let a = |i: usize, k: usize| sc.basis_a1().coefficient(i - 1, k - 1);
    let b = |i: usize, k: usize| sc.basis_b1().coefficient(i - 1, k - 1);
    let z = czero::<T>();
    let rows: [[C<T>; 4]; 5] = [
        [a(2, 1), a(3, 1), z, z],
        [a(2, 2), a(3, 2), z, z],
        [z, z, b(2, 1), b(3, 1)],
        [z, z, b(2, 2), b(3, 2)],
        [a(2, 3), a(3, 3), b(2, 3), b(3, 3)],
    ];
    let block = CMatrix::from_fn(4, |i, k| rows[i][k]);
    let det = block.determinant();
    let columns: Vec<Vec<C<T>>> = (0..4).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
    let rank = rank(&columns, T::lit(1e-9))?;

    let f = |x: T| x.to_f64().unwrap();
    let (t1, t2) = (f(sc.dir_a().theta()), f(sc.dir_b().theta()));
    let s1 = (t1 / 2.0).sin().powi(2);
    let s2 = (t2 / 2.0).sin().powi(2);
    Ok(AppendixAReport {
        theta1: t1,
        theta2: t2,
        determinant: (f(det.re), f(det.im)),
        determinant_abs: f(det.norm()),
        factorized_abs: s1 * s2,
        printed_expression_abs: (2.0 + t1.cos()) * s1 * s2 / 2.0,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn equator_determinant_is_one_quarter() {
        let sc = HardyScenario::from_angles(SpinJ::ONE, FRAC_PI_2, FRAC_PI_2, 0.0, 0.0).unwrap();
        let rep = appendix_a_check(&sc).unwrap();
        assert!((rep.determinant_abs - 0.25).abs() < 1e-14);
        assert_eq!(rep.rank, 4);
        assert!((rep.printed_expression_abs - 0.25).abs() < 1e-14);
    }

    #[test]
    fn determinant_vanishes_toward_endpoint() {
        let sc = HardyScenario::from_angles(SpinJ::ONE, 1e-4, 1.0, 0.0, 0.0).unwrap();
        let rep = appendix_a_check(&sc).unwrap();
        assert!(rep.determinant_abs < 1e-8);
    }

    #[test]
    fn rejects_other_spins() {
        let sc = HardyScenario::from_angles(SpinJ::HALF, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(appendix_a_check(&sc).is_err());
    }
}
