//! Printed eigenvector coefficient tables for spin ½, 1 and 3/2, in the
//! coefficient convention a_{ik} = component of |Â₁ = m_i⟩ along |Ŝ_z = m_k⟩.
//! They serve as independent oracles for the rotation construction.

use crate::scalar::C;

/// a₁₁ = cos(θ/2), a₁₂ = e^{iφ} sin(θ/2), a₂₁ = e^{−iφ} sin(θ/2), a₂₂ = −cos(θ/2).
pub fn spin_half_coefficients(t: f64, p: f64) -> [[C<f64>; 2]; 2] {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let e = C::from_polar(1.0, p);
    [[C::new(c, 0.0), e * s], [e.conj() * s, C::new(-c, 0.0)]]
}

pub fn spin_one_coefficients(t: f64, p: f64) -> [[C<f64>; 3]; 3] {
    let (c, s) = (t.cos(), t.sin());
    let e1 = C::from_polar(1.0, -p);
    let e2 = C::from_polar(1.0, -2.0 * p);
    let r2 = 2f64.sqrt();
    let re = |x: f64| C::new(x, 0.0);
    [
        [e2 * (1.0 + c) / 2.0, e1 * s / r2, re((1.0 - c) / 2.0)],
        [-e2 * s / r2, e1 * c, re(s / r2)],
        [e2 * (1.0 - c) / 2.0, -e1 * s / r2, re((1.0 + c) / 2.0)],
    ]
}

/// Squared moduli of the spin-3/2 table, with the first row normalized by
/// csc⁶(θ/2).
pub fn spin_three_halves_moduli(t: f64) -> [[f64; 4]; 4] {
    let h = t / 2.0;
    let cot = |x: f64| 1.0 / x.tan();
    let csc = |x: f64| 1.0 / x.sin();
    let r3 = 3f64.sqrt();
    let rows = [
        [cot(h).powi(3), r3 * cot(h).powi(2), r3 * cot(h), 1.0],
        [-r3 * cot(h), -3.0 + csc(h).powi(2), 3.0 * cot(t) + csc(t), r3],
        [2.0 * r3 * h.tan(), 6.0 - 4.0 / (1.0 + t.cos()), 6.0 * cot(t) - 2.0 * csc(t), 2.0 * r3],
        [-h.tan().powi(3), r3 * h.tan().powi(2), -r3 * h.tan(), 1.0],
    ];
    let norms = [
        1.0 + 3.0 * cot(h).powi(2) + 3.0 * cot(h).powi(4) + cot(h).powi(6),
        3.0 + 3.0 * cot(h).powi(2)
            + (-3.0 + csc(h).powi(2)).powi(2)
            + (3.0 * cot(t) + csc(t)).powi(2),
        (6.0 - 4.0 / (1.0 + t.cos())).powi(2)
            + 4.0
                * (3.0 + (-1.0 + 3.0 * t.cos()).powi(2) * csc(t).powi(2)
                    + 3.0 * h.tan().powi(2)),
        1.0 + 3.0 * (cot(t) - csc(t)).powi(2) + 3.0 * h.tan().powi(4) + h.tan().powi(6),
    ];
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            out[i][k] = rows[i][k].powi(2) / norms[i];
        }
    }
    out
}
