use std::f64::consts::{PI, TAU};

use hardy_core::entanglement::{
    apply_local, invariant_coverage_scan, invariant_spin_half, maxent_state, reduced_density,
    schmidt_spectrum, standard_maxent, su_invariants, CoverageConfig,
};
use hardy_core::hardy::optimal_cos_theta;
use hardy_core::unitary::UnitaryParam;
use hardy_core::{condition_states, hardy_state_max, q_value, Complex64 as C, Scenario, SpinJ};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reduced density of the spin-½ ψ_max written with the coefficients
/// a₁₁ = cos(θ₁/2), a₁₂ = e^{iφ₁} sin(θ₁/2) and likewise for b.
fn spin_half_rho(t1: f64, t2: f64, p2: f64) -> [[C; 2]; 2] {
    let a11 = (t1 / 2.0).cos();
    let b11 = C::new((t2 / 2.0).cos(), 0.0);
    let b12 = C::from_polar((t2 / 2.0).sin(), p2);
    let n = 1.0 - (a11 * b11.norm()).powi(2);
    let a11b12 = (a11 * b12.norm()).powi(2);
    let ab = (a11 * b11.norm() * b12.norm()).powi(2);
    [
        [C::new((n - ab) / n, 0.0), -b11 * b12.conj() * a11b12 / n],
        [-b11.conj() * b12 * a11b12 / n, C::new(ab / n, 0.0)],
    ]
}

#[test]
fn spin_half_reduced_density_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..10 {
        let (t1, t2) = (rng.random_range(0.05..3.09), rng.random_range(0.05..3.09));
        let (p1, p2) = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
        let sc = Scenario::from_angles(SpinJ::HALF, t1, t2, p1, p2).unwrap();
        let rho = reduced_density(&hardy_state_max(&sc).unwrap());
        let expect = spin_half_rho(t1, t2, p2);
        for r in 0..2 {
            for c in 0..2 {
                assert!((rho[(r, c)] - expect[r][c]).norm() < 1e-12, "({r},{c})");
            }
        }
        assert!((rho.trace() - C::new(1.0, 0.0)).norm() < 1e-12);
        assert!(rho.hermiticity_defect() < 1e-14);
    }
}

#[test]
fn spin_half_invariant_equals_determinant_on_grid() {
    for i in 0..20 {
        for k in 0..20 {
            let t1 = PI * (i as f64 + 0.5) / 20.0;
            let t2 = PI * (k as f64 + 0.5) / 20.0;
            let sc = Scenario::from_angles(SpinJ::HALF, t1, t2, 0.0, 0.0).unwrap();
            let psi = hardy_state_max(&sc).unwrap();
            let det = reduced_density(&psi).determinant().re;
            assert!((invariant_spin_half(t1, t2) - det).abs() < 1e-12);
            let inv = su_invariants(&psi).e[0];
            assert!((inv - det).abs() < 1e-12);
            let lam = schmidt_spectrum(&psi).values[0];
            assert!((lam * lam - lam + inv).abs() < 1e-12);
        }
    }
}

#[test]
fn spin_half_invariant_at_optimum() {
    let t = optimal_cos_theta::<f64>(SpinJ::HALF).unwrap().acos();
    let sc = Scenario::from_angles(SpinJ::HALF, t, t, 0.0, 0.0).unwrap();
    let psi = hardy_state_max(&sc).unwrap();
    let det = reduced_density(&psi).determinant().re;
    assert!((su_invariants(&psi).e[0] - det).abs() < 1e-12);
}

#[test]
fn psi_max_spectrum_is_never_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for two_j in 1..=4 {
        let j = SpinJ::from_twice(two_j).unwrap();
        for _ in 0..100 {
            let sc = Scenario::from_angles(
                j,
                rng.random_range(0.05..3.09),
                rng.random_range(0.05..3.09),
                rng.random_range(0.0..TAU),
                rng.random_range(0.0..TAU),
            )
            .unwrap();
            let sp = schmidt_spectrum(&hardy_state_max(&sc).unwrap());
            assert!(sp.spread() > 1e-6);
            assert!((sp.values.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(sp.values.iter().all(|&x| x >= -1e-14));
        }
    }
}

#[test]
fn invariants_are_local_unitary_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for two_j in 1..=4 {
        let j = SpinJ::from_twice(two_j).unwrap();
        let d = j.dim();
        let sc = Scenario::from_angles(j, 0.8, 2.2, 0.1, 0.9).unwrap();
        let psi = hardy_state_max(&sc).unwrap();
        let inv = su_invariants(&psi).e;
        for _ in 0..10 {
            let ua = UnitaryParam::<f64>::random(d, &mut rng).materialize();
            let ub = UnitaryParam::<f64>::random(d, &mut rng).materialize();
            let moved = su_invariants(&apply_local(&psi, &ua, &ub).unwrap()).e;
            for (a, b) in inv.iter().zip(&moved) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn maximally_entangled_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    for two_j in 1..=4 {
        let j = SpinJ::from_twice(two_j).unwrap();
        let d = j.dim() as f64;
        for _ in 0..10 {
            let s = maxent_state(j, &UnitaryParam::<f64>::random(j.dim(), &mut rng)).unwrap();
            for x in schmidt_spectrum(&s).values {
                assert!((x - 1.0 / d).abs() < 1e-12);
            }
        }
        let psi0 = standard_maxent::<f64>(j);
        let sc = Scenario::from_angles(j, 1.0, 2.0, 0.0, 0.0).unwrap();
        let direct = condition_states(&sc).target().overlap(&psi0).norm_sqr();
        assert!((q_value(&sc, &psi0) - direct).abs() < 1e-15);
        assert!((direct - 1.0 / d).abs() < 1e-14);
    }
}

#[test]
fn spin_half_scan_covers_interior() {
    let cfg = CoverageConfig { grid_n: 100, ..Default::default() };
    let rep = invariant_coverage_scan(SpinJ::HALF, &cfg).unwrap();
    assert_eq!(rep.psi_max.samples, 10_000);
    assert!(rep.psi_max.min[0] <= 0.01 && rep.psi_max.max[0] >= 0.24);
    assert!(rep.psi_max.max[0] <= 0.25);
}

#[test]
fn spin_one_family_reaches_beyond_psi_max() {
    let cfg = CoverageConfig {
        grid_n: 60,
        family_scenarios: 20_000,
        draws_per_scenario: 1,
        bins: 10,
        seed: 7,
    };
    let rep = invariant_coverage_scan(SpinJ::ONE, &cfg).unwrap();
    let fam = rep.family.unwrap();
    assert!(fam.max[0] > rep.psi_max.max[0] + 0.03);
    assert!(fam.max[1] > rep.psi_max.max[1] + 0.01);
    // ψ_max has Schmidt rank two for spin 1.
    assert!(rep.psi_max.max[1] < 1e-12);
}
