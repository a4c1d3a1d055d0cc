use std::f64::consts::PI;

use hardy_core::entanglement::standard_maxent;
use hardy_core::gram_schmidt::{extend_orthonormal, rank};
use hardy_core::hardy::{
    appendix_a_check, general_hardy_state, hardy_subspace_basis, product_families, q_closed_form,
    q_coefficient_form, q_from_projection, q_max_at, DEFAULT_TOL_POS, DEFAULT_TOL_ZERO,
};
use hardy_core::linalg::normalize;
use hardy_core::{
    condition_states, hardy_family, hardy_state_max, q_value, verify_hardy_conditions,
    Complex64 as C, Scenario, SpinJ, State,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_scenario(j: SpinJ, rng: &mut ChaCha8Rng) -> Scenario {
    let t1 = rng.random_range(0.02..PI - 0.02);
    let t2 = rng.random_range(0.02..PI - 0.02);
    let p1 = rng.random_range(0.0..2.0 * PI);
    let p2 = rng.random_range(0.0..2.0 * PI);
    Scenario::from_angles(j, t1, t2, p1, p2).unwrap()
}

fn gaussian(n: usize, rng: &mut ChaCha8Rng) -> Vec<C> {
    (0..n).map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect()
}

#[test]
fn oracle_triangle_low_spins() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for j in [SpinJ::HALF, SpinJ::ONE, SpinJ::THREE_HALVES] {
        for _ in 0..100 {
            let sc = random_scenario(j, &mut rng);
            let psi = hardy_state_max(&sc).unwrap();
            let q = q_value(&sc, &psi);
            let closed = q_closed_form(j, sc.dir_a().theta(), sc.dir_b().theta()).unwrap();
            let coeff = q_coefficient_form(&sc).unwrap();
            assert!((q - closed).abs() < 1e-10, "{j}: {q} vs {closed}");
            assert!((q - coeff).abs() < 1e-10, "{j}: {q} vs {coeff}");
            assert!((closed - coeff).abs() < 1e-10);
            assert!((q - q_from_projection(&sc)).abs() < 1e-12);
        }
    }
}

#[test]
fn spin_two_closed_form_on_grid() {
    for i in 0..15 {
        for k in 0..15 {
            let t1 = PI * (i as f64 + 0.5) / 15.0;
            let t2 = PI * (k as f64 + 0.5) / 15.0;
            let q = q_max_at(SpinJ::TWO, t1, t2, 0.0, 0.0).unwrap();
            assert!((q - q_closed_form(SpinJ::TWO, t1, t2).unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn spin_three_halves_coefficient_form_at_optimum() {
    let c = 1.0 - 2f64.powf(2.0 / 3.0) * (3.0 - 5f64.sqrt()).powf(1.0 / 3.0);
    let sc = Scenario::from_angles(SpinJ::THREE_HALVES, c.acos(), c.acos(), 0.2, 1.0).unwrap();
    assert!((q_coefficient_form(&sc).unwrap() - 0.0901699).abs() < 1e-7);
}

#[test]
fn q_is_independent_of_azimuths() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for two_j in 1..=4 {
        let j = SpinJ::from_twice(two_j).unwrap();
        for _ in 0..20 {
            let (t1, t2) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
            let q0 = q_max_at(j, t1, t2, 0.0, 0.0).unwrap();
            let (p1, p2): (f64, f64) = (rng.random_range(0.0..6.28), rng.random_range(0.0..6.28));
            assert!((q_max_at(j, t1, t2, p1, p2).unwrap() - q0).abs() < 1e-12);
        }
    }
}

#[test]
fn rank_and_decomposition_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for two_j in 1..=6 {
        let j = SpinJ::from_twice(two_j).unwrap();
        let d = j.dim();
        for _ in 0..50 {
            let sc = random_scenario(j, &mut rng);
            let conds = condition_states(&sc);
            assert_eq!(conds.len(), 2 * d);
            let amps: Vec<Vec<C>> = conds.states().iter().map(|s| s.amplitudes().to_vec()).collect();
            assert_eq!(rank(&amps[..2 * d - 1], 1e-9).unwrap(), 2 * d - 1);
            assert_eq!(rank(&amps, 1e-9).unwrap(), 2 * d);
        }
        let sc = random_scenario(j, &mut rng);
        let fam = hardy_family(&sc).unwrap();
        let mut all = hardy_subspace_basis(&condition_states(&sc));
        all.push(fam.psi_max.amplitudes().to_vec());
        all.extend(fam.sprime_basis.iter().map(|s| s.amplitudes().to_vec()));
        assert_eq!(all.len(), d * d);
        assert_eq!(rank(&all, 1e-9).unwrap(), d * d);
    }
}

#[test]
fn product_family_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..10 {
        let p = product_families(&random_scenario(SpinJ::ONE, &mut rng));
        assert_eq!((p.len(), rank(&p, 1e-9).unwrap()), (4, 3));
        let p = product_families(&random_scenario(SpinJ::THREE_HALVES, &mut rng));
        assert_eq!((p.len(), rank(&p, 1e-9).unwrap()), (12, 8));
    }
}

#[test]
fn psi_max_is_maximal_in_the_hardy_subspace() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for j in [SpinJ::HALF, SpinJ::ONE, SpinJ::THREE_HALVES] {
        let sc = random_scenario(j, &mut rng);
        let psi = hardy_state_max(&sc).unwrap();
        let qmax = q_value(&sc, &psi);
        let s = hardy_subspace_basis(&condition_states(&sc));
        let n = j.dim() * j.dim();
        let units: Vec<Vec<C>> = (0..n).map(|k| hardy_core::linalg::unit_vector(n, k)).collect();
        let perp = extend_orthonormal(&s, &units, 1e-9).unwrap().basis;
        for _ in 0..50 {
            let coeffs = gaussian(perp.len(), &mut rng);
            let mut w = vec![C::new(0.0, 0.0); n];
            for (b, c) in perp.iter().zip(&coeffs) {
                for (x, y) in w.iter_mut().zip(b) {
                    *x += y * c;
                }
            }
            let w = State::normalized(j, w).unwrap();
            assert!(q_value(&sc, &w) <= qmax + 1e-12);
        }
    }
}

#[test]
fn random_family_states_satisfy_hardy_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for two_j in 1..=4 {
        let j = SpinJ::from_twice(two_j).unwrap();
        let sc = random_scenario(j, &mut rng);
        let fam = hardy_family(&sc).unwrap();
        let q_psi = q_value(&sc, &fam.psi_max);
        let rep = verify_hardy_conditions(&sc, &fam.psi_max, DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
        assert!(rep.passed && rep.q <= 0.0901699437494743 + 1e-12);
        for _ in 0..100 {
            let mut v = gaussian(fam.sprime_basis.len() + 1, &mut rng);
            normalize(&mut v);
            let s = general_hardy_state(&fam, v[0], &v[1..]).unwrap();
            let rep = verify_hardy_conditions(&sc, &s, DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
            assert!(rep.passed, "{j}: {:?}", rep.violated);
            assert!((q_value(&sc, &s) - v[0].norm_sqr() * q_psi).abs() < 1e-12);
        }
        for e in &fam.sprime_basis {
            assert!(q_value(&sc, e) < 1e-20);
        }
    }
}

#[test]
fn non_hardy_states_fail_verification() {
    let sc = Scenario::from_angles(SpinJ::ONE, 1.0, 2.0, 0.3, 0.5).unwrap();
    let conds = condition_states(&sc);
    let target = conds.target().clone();
    assert!((q_value(&sc, &target) - 1.0).abs() < 1e-14);
    let first = &conds.states()[0];
    let rep = verify_hardy_conditions(&sc, first, DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
    assert!(!rep.passed && (rep.probabilities[0] - 1.0).abs() < 1e-14);
    let rep = verify_hardy_conditions(&sc, &standard_maxent(SpinJ::ONE), DEFAULT_TOL_ZERO, DEFAULT_TOL_POS);
    assert!(!rep.passed && rep.max_zero_probability > 1e-3);
}

#[test]
fn appendix_a_determinant_on_interior_grid() {
    for i in 0..10 {
        for k in 0..10 {
            let t1 = PI * (i as f64 + 0.5) / 10.0;
            let t2 = PI * (k as f64 + 0.5) / 10.0;
            let sc = Scenario::from_angles(SpinJ::ONE, t1, t2, 0.7, 1.9).unwrap();
            let rep = appendix_a_check(&sc).unwrap();
            assert!(rep.determinant_abs > 1e-6);
            assert!((rep.determinant_abs - rep.factorized_abs).abs() < 1e-12);
            assert_eq!(rep.rank, 4);
        }
    }
}
