use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use granmech::energy::{energy_continuum, energy_micro};
use granmech::identification::{
    d_from_iso_params, engineering_from_k, identify, iso_params_from_d, isotropic_closed_forms,
    k_from_engineering, mindlin_from_c, GradientCoefficients, IdentifyOptions,
    StiffnessDistribution,
};
use granmech::kinematics::{
    h_tensor_direct, h_tensor_from_strain, kinematic_state, PlacementField, StrainState,
};
use granmech::tensor::{check_symmetry, max_abs_diff, SymmetrySpec};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_identity(seed in any::<u64>(), dim in 2usize..=3, amp in 1e-4f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = PlacementField::random(&mut rng, dim, amp).unwrap();
        let x = vec![0.3; dim];
        let s = kinematic_state(&chi, &x).unwrap();
        let diff = max_abs_diff(&h_tensor_direct(&s), &h_tensor_from_strain(&s.strain)).unwrap();
        prop_assert!(diff < 1e-12 * s.f.max_abs().powi(2).max(1.0) * 10.0);
    }

    #[test]
    fn engineering_roundtrip(dim in 2usize..=3, ke in 0.05f64..50.0, kt in 0.0f64..20.0, l in 0.1f64..5.0) {
        let e = engineering_from_k(dim, l, ke, kt).unwrap();
        let k = k_from_engineering(dim, l, e.young, e.poisson).unwrap();
        prop_assert!(rel(k.kbar_eta, ke) < 1e-12);
        prop_assert!((k.kbar_tau - kt).abs() < 1e-12 * ke.max(kt));
    }

    #[test]
    fn gradient_coefficient_roundtrip(c in prop::array::uniform5(-10.0f64..10.0)) {
        let gc = GradientCoefficients { c3: c[0], c4: c[1], c5: c[2], c6: c[3], c7: c[4] };
        let back = iso_params_from_d(&d_from_iso_params(&gc), 1e-12).unwrap();
        for (a, b) in gc.as_array().iter().zip(back.as_array()) {
            prop_assert!((a - b).abs() < 1e-12 * 10.0);
        }
        let twice = mindlin_from_c(&GradientCoefficients { c3: 2.0 * c[0], c4: 2.0 * c[1], c5: 2.0 * c[2], c6: 2.0 * c[3], c7: 2.0 * c[4] });
        for (a, b) in twice.as_array().iter().zip(mindlin_from_c(&gc).as_array()) {
            prop_assert_eq!(*a, 2.0 * b);
        }
    }

    #[test]
    fn closed_form_d_roundtrip(ke in 0.1f64..10.0, kt in 0.0f64..5.0, l in 0.5f64..2.0) {
        let d = isotropic_closed_forms(3, l, ke, kt).unwrap().d;
        let back = d_from_iso_params(&iso_params_from_d(&d, 1e-12).unwrap());
        prop_assert!(max_abs_diff(&d, &back).unwrap() <= 1e-12 * d.max_abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energy_equivalence(seed in any::<u64>(), dim in 2usize..=3, which in 0usize..3, l in 0.3f64..2.0) {
        let dist = match which {
            0 => StiffnessDistribution::isotropic(dim, 3.0, 0.5).unwrap(),
            1 => StiffnessDistribution::biased_c1(dim, 1.0, 0.9, 0.4).unwrap(),
            _ => StiffnessDistribution::fabric_c1sq(dim, 1.0, 2.0, 0.6).unwrap(),
        };
        let t = identify(&dist, l, &IdentifyOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = StrainState::random(&mut rng, dim, 0.5, 1.0).unwrap();
        let a = energy_micro(&dist, &s, l).unwrap();
        let b = energy_continuum(&t.c, &t.m, &t.d, &s).unwrap();
        prop_assert!(a >= 0.0);
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
        let scaled = energy_micro(&dist, &s.scaled(-2.5), l).unwrap();
        prop_assert!((scaled - 6.25 * a).abs() <= 1e-12 * scaled.max(1e-300));
    }

    #[test]
    fn symmetries_hold_for_anisotropic_input(dim in 2usize..=3, kappa in 0.1f64..3.0, beta in -0.9f64..0.9, tau in 0.0f64..2.0) {
        let dist = StiffnessDistribution::biased_c1(dim, kappa, beta, tau).unwrap();
        let t = identify(&dist, 1.0, &IdentifyOptions::default()).unwrap();
        prop_assert!(check_symmetry(&t.c, &SymmetrySpec::classical(), 1e-13).unwrap().symmetric);
        prop_assert!(check_symmetry(&t.m, &SymmetrySpec::coupling(), 1e-13).unwrap().symmetric);
        prop_assert!(check_symmetry(&t.d, &SymmetrySpec::gradient(), 1e-13).unwrap().symmetric);
    }
}

#[test]
fn classical_energy_without_gradient() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let dist = StiffnessDistribution::fabric_c1sq(3, 1.0, 1.0, 0.2).unwrap();
    let t = identify(&dist, 1.0, &IdentifyOptions::default()).unwrap();
    let s = StrainState::random(&mut rng, 3, 0.4, 0.0).unwrap();
    let zero_m = granmech::Tensor::zeros(3, 5).unwrap();
    let zero_d = granmech::Tensor::zeros(3, 6).unwrap();
    let full = energy_continuum(&t.c, &t.m, &t.d, &s).unwrap();
    let classical = energy_continuum(&t.c, &zero_m, &zero_d, &s).unwrap();
    assert_eq!(full, classical);
}
