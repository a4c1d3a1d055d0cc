//! Angle-only and coefficient-level expressions for the maximal q at fixed
//! observables, j = 1/2, 1, 3/2, 2. These are independent of the projection
//! pipeline in the parent module and serve as its oracles.

use crate::error::{HardyError, Result};
use crate::scalar::Real;
use crate::spin::SpinJ;

use super::HardyScenario;

/// (5√5 − 11)/2, the largest q found for every spin examined.
pub const Q_MAX: f64 = 0.090_169_943_749_474_24;

/// Known optimal cos θ (with θ₁ = θ₂ = θ) for j = 1/2, 1, 3/2.
pub fn optimal_cos_theta<T: Real>(j: SpinJ) -> Option<T> {
    let five = T::lit(5.0).sqrt();
    match j.two_j() {
        1 => Some(five - T::lit(2.0)),
        2 => Some(T::lit(2.0) - five),
        3 => Some(T::one() - T::lit(4.0).cbrt() * (T::lit(3.0) - five).cbrt()),
        _ => None,
    }
}

/// Optimal θ₁ = θ₂ in degrees as reported to the printed precision.
pub fn reported_optimal_theta_deg(j: SpinJ) -> Option<f64> {
    match j.two_j() {
        1 => Some(76.35),
        2 => Some(103.65),
        3 => Some(116.815),
        4 => Some(124.9),
        _ => None,
    }
}

fn half_angles<T: Real>(theta: T) -> (T, T) {
    (theta / T::lit(2.0)).sin_cos()
}

pub fn q_spin_half<T: Real>(theta1: T, theta2: T) -> T {
    let (c1, c2) = (theta1.cos(), theta2.cos());
    let (s1, s2) = (theta1.sin(), theta2.sin());
    -(s1 * s1 * s2 * s2) / (T::lit(4.0) * (T::lit(-3.0) + c1 + c2 + c1 * c2))
}

pub fn q_one<T: Real>(theta1: T, theta2: T) -> T {
    let l = T::lit;
    let (c1, c2) = (theta1.cos(), theta2.cos());
    let (sh1, ch1) = half_angles(theta1);
    let (sh2, ch2) = half_angles(theta2);
    let (hc1, hc2) = (ch1 * ch1, ch2 * ch2);
    let num = l(16.0) * hc1 * hc2 * (l(-3.0) + c1) * (l(-3.0) + c2) * sh1.powi(4) * sh2.powi(4);
    let den = l(39.0) - l(20.0) * c1 + l(5.0) * (l(2.0) * theta1).cos()
        + l(16.0) * hc1 * (l(-3.0) + c1) * c2
        - l(4.0) * hc1 * (l(-3.0) + c1) * (l(2.0) * theta2).cos();
    num / den
}

/// The `30 cos²(θ₁/2)·P(θ₁)` term multiplies cos θ₂; with cos 2θ₂ in that
/// slot the expression no longer agrees with the projection pipeline.
pub fn q_three_halves<T: Real>(theta1: T, theta2: T) -> T {
    let l = T::lit;
    let p = |t: T| l(15.0) - l(8.0) * t.cos() + (l(2.0) * t).cos();
    let (sh1, ch1) = half_angles(theta1);
    let (sh2, ch2) = half_angles(theta2);
    let hc1 = ch1 * ch1;
    let num = -(l(8.0) * hc1 * ch2 * ch2 * p(theta1) * p(theta2) * sh1.powi(6) * sh2.powi(6));
    let k = hc1 * p(theta1);
    let den = l(165.0) * theta1.cos() - l(66.0) * (l(2.0) * theta1).cos()
        + l(11.0) * (l(3.0) * theta1).cos()
        + l(30.0) * k * theta2.cos()
        - l(12.0) * k * (l(2.0) * theta2).cos()
        + l(2.0) * k * (l(3.0) * theta2).cos()
        - l(270.0);
    num / den
}

pub fn q_two<T: Real>(theta1: T, theta2: T) -> T {
    let l = T::lit;
    let cn = |n: f64, t: T| (l(n) * t).cos();
    let p = |t: T| l(47.0) * t.cos() - l(10.0) * (l(7.0) + cn(2.0, t)) + cn(3.0, t);
    let (sh1, ch1) = half_angles(theta1);
    let (sh2, ch2) = half_angles(theta2);
    let hc1 = ch1 * ch1;
    let num = -(l(16.0) * hc1 * ch2 * ch2 * p(theta1) * p(theta2) * sh1.powi(8) * sh2.powi(8));
    let t2 = l(-56.0) * theta2.cos() + l(28.0) * cn(2.0, theta2) - l(8.0) * cn(3.0, theta2)
        + cn(4.0, theta2);
    let inner = theta1.cos() * (l(1302.0) + l(47.0) * hc1 * t2)
        + hc1
            * (l(-70.0) * (l(28.0) * cn(2.0, theta2) - l(8.0) * cn(3.0, theta2) + cn(4.0, theta2))
                + (l(-10.0) * cn(2.0, theta1) + cn(3.0, theta1)) * t2);
    let den = l(-7735.0) - l(2604.0) * cn(2.0, theta1) + l(744.0) * cn(3.0, theta1)
        - l(93.0) * cn(4.0, theta1)
        + l(15680.0) * hc1 * theta2.cos()
        + l(4.0) * inner;
    num / den
}

/// Spin-2 q on the diagonal θ₁ = θ₂ = θ. Written with the overall sign that
/// makes it nonnegative (the denominator polynomial is negative on (0, π)).
pub fn q2_symmetric<T: Real>(theta: T) -> T {
    let l = T::lit;
    let cn = |n: f64| (l(n) * theta).cos();
    let (sh, ch) = half_angles(theta);
    let poly = l(-70.0) + l(47.0) * theta.cos() - l(10.0) * cn(2.0) + cn(3.0);
    let den = l(8.0)
        * (l(-221.0) - l(56.0) * theta.cos() + l(28.0) * cn(2.0) - l(8.0) * cn(3.0) + cn(4.0));
    -(poly * poly * sh.powi(8) * ch.powi(4)) / den
}

/// Angle-only maximal q for j ∈ {1/2, 1, 3/2, 2}; independent of φ₁, φ₂.
pub fn q_closed_form<T: Real>(j: SpinJ, theta1: T, theta2: T) -> Result<T> {
    match j.two_j() {
        1 => Ok(q_spin_half(theta1, theta2)),
        2 => Ok(q_one(theta1, theta2)),
        3 => Ok(q_three_halves(theta1, theta2)),
        4 => Ok(q_two(theta1, theta2)),
        _ => Err(HardyError::UnsupportedSpin(j.to_string())),
    }
}

/// Maximal q from the moduli of the eigenbasis coefficients
/// a_{ik} = ⟨Â₂=j−k+1|Â₁=j−i+1⟩ and b_{ik} (1-based), for j ∈ {1/2, 1, 3/2}.
pub fn q_coefficient_form<T: Real>(sc: &HardyScenario<T>) -> Result<T> {
    let a = |i: usize, k: usize| sc.basis_a1().coefficient(i - 1, k - 1).norm_sqr();
    let b = |i: usize, k: usize| sc.basis_b1().coefficient(i - 1, k - 1).norm_sqr();
    let one = T::one();
    match sc.j().two_j() {
        1 => {
            let sa = a(2, 2);
            let q = (one - sa) - b(2, 2) * (one - sa).powi(2) / (one - b(2, 2) * sa)
                - a(1, 2) * b(1, 2);
            Ok(q)
        }
        2 => {
            let sa = a(2, 3) + a(3, 3);
            let r = (one - sa).powi(2);
            let q = (one - sa) - b(2, 3) * r / (one - b(2, 3) * sa)
                - b(3, 3) * r / ((one - (b(2, 3) + b(3, 3)) * sa) * (one - b(2, 3) * sa))
                - a(1, 3) * b(1, 3);
            Ok(q)
        }
        3 => {
            let sa = a(2, 4) + a(3, 4) + a(4, 4);
            let r = (one - sa).powi(2);
            let d1 = one - b(2, 4) * sa;
            let d2 = one - (b(2, 4) + b(3, 4)) * sa;
            let d3 = one - (b(2, 4) + b(3, 4) + b(4, 4)) * sa;
            let q = (one - sa) - b(2, 4) * r / d1 - b(3, 4) * r / (d1 * d2)
                - b(4, 4) * r / d2 / d3
                - a(1, 4) * b(1, 4);
            Ok(q)
        }
        _ => Err(HardyError::UnsupportedSpin(sc.j().to_string())),
    }
}
