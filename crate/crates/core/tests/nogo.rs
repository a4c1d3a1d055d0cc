use hardy_core::hardy::optimal_cos_theta;
use hardy_core::nogo::{
    general_state_search, maxent_probabilities, no_go_search, unitary_mapping_low_to_b1_top,
    unitary_vanishing_corner, NoGoConfig,
};
use hardy_core::{Scenario, SpinJ};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn optimal(j: SpinJ) -> Scenario {
    let t = optimal_cos_theta::<f64>(j).unwrap().acos();
    Scenario::from_angles(j, t, t, 0.0, 0.0).unwrap()
}

#[test]
fn no_feasible_maximally_entangled_state() {
    for j in [SpinJ::HALF, SpinJ::ONE] {
        let r = no_go_search(&optimal(j), &NoGoConfig::default());
        assert_eq!(r.restarts, 200);
        assert!(r.best_feasible_q.unwrap_or(0.0) < 1e-8);
        // The zero-conditions alone stay far from satisfiable.
        assert!(r.min_zero > 1e-3, "{j}: {}", r.min_zero);
    }
}

#[test]
fn unpenalized_search_reaches_one_over_d() {
    for j in [SpinJ::HALF, SpinJ::ONE] {
        let cfg = NoGoConfig { kappa: 0.0, restarts: 20, ..Default::default() };
        let r = no_go_search(&optimal(j), &cfg);
        assert!(r.q_at_best > 0.05);
        assert!((r.q_at_best - 1.0 / j.dim() as f64).abs() < 1e-6);
    }
}

#[test]
fn general_states_reach_the_hardy_maximum() {
    let cfg = NoGoConfig { restarts: 40, ..NoGoConfig::general_states() };
    let r = general_state_search(&optimal(SpinJ::HALF), &cfg);
    assert!(r.best_feasible_q.unwrap() >= 0.09 - 1e-4);
}

#[test]
fn constructed_unitaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for j in [SpinJ::HALF, SpinJ::ONE, SpinJ::THREE_HALVES] {
        let sc = optimal_or_generic(j);
        let p = maxent_probabilities(&sc, &unitary_vanishing_corner(sc.dim(), &mut rng)).unwrap();
        assert!(*p.last().unwrap() < 1e-20);
        let u = unitary_mapping_low_to_b1_top(&sc).unwrap();
        let p = maxent_probabilities(&sc, &u).unwrap();
        let d = sc.dim();
        assert!(p[d..2 * d - 1].iter().all(|&x| x < 1e-28));
        // The remaining zero-conditions then fail, as the argument requires.
        assert!(p[..d].iter().cloned().fold(0.0, f64::max) > 1e-6);
    }
}

fn optimal_or_generic(j: SpinJ) -> Scenario {
    match optimal_cos_theta::<f64>(j) {
        Some(_) => optimal(j),
        None => Scenario::from_angles(j, 1.2, 2.0, 0.0, 0.0).unwrap(),
    }
}
