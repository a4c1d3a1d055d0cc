use hardy_core::hardy::{optimal_cos_theta, q2_symmetric, reported_optimal_theta_deg, Q_MAX};
use hardy_core::optimize::{
    conjecture_probe, critical_residual, diagonal_maximum, maximize_q, symmetric_slice,
    OptimizeConfig,
};
use hardy_core::SpinJ;

const LOW: [SpinJ; 4] = [SpinJ::HALF, SpinJ::ONE, SpinJ::THREE_HALVES, SpinJ::TWO];

#[test]
fn optima_for_low_spins() {
    for j in LOW {
        let r = maximize_q(j, &OptimizeConfig::default()).unwrap();
        assert!((r.q_star - Q_MAX).abs() < 1e-6, "{j}");
        let deg = reported_optimal_theta_deg(j).unwrap();
        assert!((r.theta1_deg() - deg).abs() < 0.05 && (r.theta2_deg() - deg).abs() < 0.05);
        if let Some(c) = optimal_cos_theta::<f64>(j) {
            assert!((r.theta1_star.cos() - c).abs() < 1e-6);
            assert!((r.theta2_star.cos() - c).abs() < 1e-6);
        }
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0]));
        assert!((hardy_core::hardy::q_max_at(j, r.theta1_star, r.theta2_star, 0.0, 0.0).unwrap()
            - r.q_star)
            .abs()
            < 1e-10);
    }
}

#[test]
fn runs_are_bitwise_reproducible() {
    let cfg = OptimizeConfig { grid_n: 24, ..Default::default() };
    let a = maximize_q(SpinJ::THREE_HALVES, &cfg).unwrap();
    let b = maximize_q(SpinJ::THREE_HALVES, &cfg).unwrap();
    assert_eq!(a.q_star.to_bits(), b.q_star.to_bits());
    assert_eq!(a.theta1_star.to_bits(), b.theta1_star.to_bits());
    assert_eq!(a.theta2_star.to_bits(), b.theta2_star.to_bits());
}

#[test]
fn coarse_and_fine_grids_agree() {
    let a = maximize_q(SpinJ::HALF, &OptimizeConfig { grid_n: 16, ..Default::default() }).unwrap();
    let b = maximize_q(SpinJ::HALF, &OptimizeConfig::default()).unwrap();
    assert!((a.theta1_star - b.theta1_star).abs() < 1e-6);
    assert!((a.q_star - b.q_star).abs() < 1e-12);
}

#[test]
fn full_azimuth_mode_finds_the_same_maximum() {
    let cfg = OptimizeConfig { grid_n: 16, full_phi: true, ..Default::default() };
    let r = maximize_q(SpinJ::ONE, &cfg).unwrap();
    assert!((r.q_star - Q_MAX).abs() < 1e-8);
}

#[test]
fn diagonal_maximum_equals_full_maximum() {
    for j in LOW {
        let full = maximize_q(j, &OptimizeConfig::default()).unwrap();
        let (_, q) = diagonal_maximum(j, 200, 1e-10).unwrap();
        assert!((q - full.q_star).abs() < 1e-9, "{j}");
    }
}

#[test]
fn diagonal_optima_match_algebraic_values() {
    for j in [SpinJ::HALF, SpinJ::ONE] {
        let (t, _) = diagonal_maximum(j, 200, 1e-10).unwrap();
        assert!((t.cos() - optimal_cos_theta::<f64>(j).unwrap()).abs() < 1e-6);
    }
    let (t, _) = diagonal_maximum(SpinJ::ONE, 200, 1e-10).unwrap();
    assert!((t.to_degrees() - 103.65).abs() < 0.01);
}

#[test]
fn spin_two_slice_matches_symmetric_form() {
    let thetas: Vec<f64> = (1..50).map(|k| std::f64::consts::PI * k as f64 / 50.0).collect();
    for (t, q) in symmetric_slice(SpinJ::TWO, &thetas) {
        assert!((q - q2_symmetric(t)).abs() < 1e-9);
    }
}

#[test]
fn surface_is_symmetric() {
    for j in LOW {
        for &(a, b) in &[(0.3f64, 1.7f64), (1.1, 2.9), (2.0, 0.6)] {
            let q1 = hardy_core::hardy::q_max_at(j, a, b, 0.0, 0.0).unwrap();
            let q2 = hardy_core::hardy::q_max_at(j, b, a, 0.0, 0.0).unwrap();
            assert!((q1 - q2).abs() < 1e-12);
        }
    }
}

#[test]
fn stationarity_at_spin_one_optimum() {
    let t = optimal_cos_theta::<f64>(SpinJ::ONE).unwrap().acos();
    let (a, b) = critical_residual(SpinJ::ONE, t, t, 1e-4).unwrap();
    assert!(a.abs() < 1e-5 && b.abs() < 1e-5);
}

#[test]
fn conjecture_probe_reports_rows() {
    let cfg = OptimizeConfig { grid_n: 16, ..Default::default() };
    let rows = conjecture_probe(&[SpinJ::HALF, SpinJ::from_twice(5).unwrap()], &cfg).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].gap < 1e-9 && !rows[0].flagged);
    assert!(rows[1].q_star.is_finite() && rows[1].boundary_q < rows[1].q_star);
}
