//! Closed forms against the brute-force oracles.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xcorr_core::correlations::{concurrence_pure, concurrence_x, discord_x, fidelity_werner_eta};
use xcorr_core::dynamics::{evolve_xstate, evolved_singlet, Couplings, Scenario};
use xcorr_core::oracles::{
    concurrence_wootters, dense_propagate, discord_bruteforce, fidelity_uhlmann, integrate_branch, MeasurementGrid,
};
use xcorr_core::sampling::{random_params, random_xstate};
use xcorr_core::smallmat::{CMat2, CMat4, C64, ZERO};
use xcorr_core::states::{canonicalize, make_generalized_werner, make_werner, GeneralizedWernerSpec, XState};

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn local_rotation(rng: &mut ChaCha8Rng) -> CMat4 {
    let mut qubit = || {
        let (theta, a, b): (f64, f64, f64) =
            (rng.gen_range(0.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let (c, s) = (theta.cos(), theta.sin());
        CMat2::new(C64::from_polar(c, a), C64::from_polar(s, b), -C64::from_polar(s, -b), C64::from_polar(c, -a))
    };
    qubit().kron(&qubit())
}

#[test]
fn wootters_matches_x_formula() {
    let mut rng = seeded(1);
    for _ in 0..1000 {
        let s = random_xstate(&mut rng);
        let w = concurrence_wootters(&s.to_dense()).unwrap();
        assert!((w - concurrence_x(&s)).abs() <= 1e-9, "{s:?}");
    }
}

#[test]
fn wootters_is_local_unitary_invariant() {
    let mut rng = seeded(2);
    for _ in 0..200 {
        let s = random_xstate(&mut rng);
        let u = local_rotation(&mut rng);
        let rotated = u * s.to_dense() * u.adjoint();
        assert!((concurrence_wootters(&rotated).unwrap() - concurrence_x(&s)).abs() <= 1e-9);
    }
}

#[test]
fn discord_oracle_on_werner_states() {
    let grid = MeasurementGrid::acceptance();
    for alpha in [0.2, 0.55, 0.9] {
        let w = make_werner(alpha).unwrap();
        let brute = discord_bruteforce(&w.to_dense(), &grid).unwrap().discord;
        assert!((brute - discord_x(&w).unwrap().discord).abs() <= 1e-3, "alpha {alpha}");
    }
}

#[test]
fn discord_closed_form_never_exceeds_brute_force() {
    let grid = MeasurementGrid { n_theta: 32, n_phi: 64, refinement_rounds: 3, tolerance: 0.0 };
    let mut rng = seeded(3);
    for _ in 0..40 {
        let s = random_xstate(&mut rng);
        let brute = discord_bruteforce(&s.to_dense(), &grid).unwrap().discord;
        assert!(discord_x(&s).unwrap().discord <= brute + 1e-3);
    }
}

#[test]
fn discord_is_local_unitary_invariant() {
    let grid = MeasurementGrid { n_theta: 32, n_phi: 64, refinement_rounds: 3, tolerance: 0.0 };
    let mut rng = seeded(4);
    for _ in 0..10 {
        let s = random_xstate(&mut rng);
        let u = local_rotation(&mut rng);
        let rotated = u * s.to_dense() * u.adjoint();
        let brute = discord_bruteforce(&rotated, &grid).unwrap().discord;
        assert!((brute - discord_x(&s).unwrap().discord).abs() <= 1e-3);
    }
}

#[test]
fn fidelity_at_case1_reference_point() {
    let scenario = Scenario::case1(Couplings::default()).unwrap();
    let ev = scenario.evolution_at(1.5);
    let (c01, c10) = evolved_singlet(&ev.params, ev.gamma33_t);
    let eta = make_generalized_werner(&GeneralizedWernerSpec::new(0.55, c01, c10).unwrap());
    let oracle = fidelity_uhlmann(&make_werner(0.55).unwrap().to_dense(), &eta.to_dense()).unwrap();
    assert!((oracle - fidelity_werner_eta(0.55, c01, c10).unwrap().fidelity).abs() <= 1e-8);
}

#[test]
fn evolved_werner_is_eta_state() {
    let scenario = Scenario::case2(Couplings::default()).unwrap();
    for tau in [0.3, 1.1, 2.7] {
        let ev = scenario.evolution_at(tau);
        let w = make_werner(0.7).unwrap();
        let dense = dense_propagate(&w.to_dense(), &ev.params, ev.gamma33_t).unwrap();
        let (c01, c10) = evolved_singlet(&ev.params, ev.gamma33_t);
        let eta = make_generalized_werner(&GeneralizedWernerSpec::new(0.7, c01, c10).unwrap());
        assert!(dense.max_abs_diff(&eta.to_dense()) <= 1e-12);
    }
}

#[test]
fn dense_singlet_concurrence_matches_pure_formula() {
    let scenario = Scenario::case2(Couplings::default()).unwrap();
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let singlet = CMat4::outer(&[ZERO, s, -s, ZERO]);
    for tau in [0.5, 1.0, 1.5, 3.0] {
        let ev = scenario.evolution_at(tau);
        let out = dense_propagate(&singlet, &ev.params, ev.gamma33_t).unwrap();
        // pure output: |c01|² and |c10|² sit on the diagonal, c01 c10* off it
        let from_dense = 2.0 * out.0[1][2].norm();
        let (c01, c10) = evolved_singlet(&ev.params, ev.gamma33_t);
        assert!((from_dense - concurrence_pure(ZERO, c01, c10, ZERO).unwrap()).abs() <= 1e-12);
    }
}

#[test]
fn constant_field_propagator_solves_schrodinger_equation() {
    let couplings = Couplings { gamma11: 0.8, gamma22: 0.8, gamma33: 0.4, gamma12: 0.3, gamma21: 0.3 };
    let beta = 1.3;
    let scenario = Scenario::constant(couplings, beta).unwrap();
    let gamma = couplings.gamma_minus().norm();
    for tau in [0.4, 1.0, 2.5] {
        let ev = scenario.evolution_at(tau);
        let u = integrate_branch(
            |_| beta * couplings.gamma11 / gamma,
            couplings.phi_gamma_minus(),
            gamma * ev.time,
            20_000,
        );
        assert!(u.max_abs_diff(&ev.params.minus_block()) <= 1e-9, "tau {tau}");
    }
}

fn fuzzed_state(seed: u64) -> XState {
    random_xstate(&mut seeded(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evolve_matches_dense_oracle(seed in any::<u64>(), gamma33_t in -20.0f64..20.0) {
        let mut rng = seeded(seed);
        let s = random_xstate(&mut rng);
        let p = random_params(&mut rng);
        let out = evolve_xstate(&s, &p).unwrap();
        prop_assert!((out.trace() - 1.0).abs() <= 1e-12);
        let dense = dense_propagate(&s.to_dense(), &p, gamma33_t).unwrap();
        prop_assert!(dense.max_abs_diff(&out.to_dense()) <= 1e-10);
    }

    #[test]
    fn discord_bounds(seed in any::<u64>()) {
        let s = fuzzed_state(seed);
        let d = discord_x(&s).unwrap().discord;
        prop_assert!((-1e-12..=1.0 + 1e-9).contains(&d));
        if concurrence_x(&s) > 1e-9 {
            prop_assert!(d > 0.0);
        }
    }

    #[test]
    fn canonicalization_preserves_measures(seed in any::<u64>()) {
        let s = fuzzed_state(seed);
        let c = canonicalize(&s).state;
        prop_assert!((concurrence_x(&c) - concurrence_x(&s)).abs() <= 1e-12);
        prop_assert!((discord_x(&c).unwrap().discord - discord_x(&s).unwrap().discord).abs() <= 1e-12);
    }

    #[test]
    fn uhlmann_is_symmetric(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = random_xstate(&mut rng).to_dense();
        let b = random_xstate(&mut rng).to_dense();
        let f = fidelity_uhlmann(&a, &b).unwrap();
        prop_assert!((f - fidelity_uhlmann(&b, &a).unwrap()).abs() <= 1e-9);
        prop_assert!((0.0..=1.0 + 1e-9).contains(&f));
    }
}
