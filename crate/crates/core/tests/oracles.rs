//! Frozen expected values worked out by hand or from exact moments.

use std::f64::consts::PI;

use granmech::energy::{energy_continuum, energy_micro};
use granmech::identification::isotropic::{self, D_GROUPS_3D, THREE_D5_FACTOR, THREE_D6_FACTOR};
use granmech::identification::{
    c_tensor, d_from_iso_params, d_tensor, d_tensor_with, engineering_from_k, identify,
    iso_params_from_d, isotropic_closed_forms, k_from_engineering, lame_from_k, m_tensor,
    mindlin_from_c, GradientCoefficients, IdentifyOptions, IntegrationMethod,
    StiffnessDistribution,
};
use granmech::kinematics::{DisplacementMode, StrainState};
use granmech::quadrature::{monomial_moment, OrientationDomain};
use granmech::Tensor;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn classical_tensor_examples() {
    let c = c_tensor(&StiffnessDistribution::isotropic(2, 8.0, 0.0).unwrap(), 1.0).unwrap();
    for (n, v) in [("1111", 3.0), ("1122", 1.0), ("1212", 1.0), ("2222", 3.0)] {
        assert!(close(c.get_named(n).unwrap(), v, 1e-13), "C_{n}");
    }
    let c = c_tensor(
        &StiffnessDistribution::isotropic(3, 15.0, 0.0).unwrap(),
        1.0,
    )
    .unwrap();
    for (n, v) in [("1111", 3.0), ("1122", 1.0), ("1212", 1.0), ("3311", 1.0)] {
        assert!(close(c.get_named(n).unwrap(), v, 1e-13), "C_{n}");
    }
}

#[test]
fn gradient_tensor_examples() {
    let d = d_tensor(
        &StiffnessDistribution::isotropic(2, 256.0, 0.0).unwrap(),
        1.0,
    )
    .unwrap();
    assert!(close(d.get_named("111111").unwrap(), 5.0, 1e-13));
    let d = d_tensor(
        &StiffnessDistribution::isotropic(3, 560.0, 0.0).unwrap(),
        1.0,
    )
    .unwrap();
    assert!(close(d.get_named("111111").unwrap(), 5.0, 1e-13));
}

#[test]
fn coupling_tensor_example() {
    let dist = StiffnessDistribution::biased_c1(2, 1.0, 1.0, 0.0).unwrap();
    let m = m_tensor(&dist, 1.0).unwrap();
    assert!(close(m.get_named("11111").unwrap(), 5.0 * PI / 32.0, 1e-14));
    let iso = StiffnessDistribution::isotropic(3, 4.0, 2.0).unwrap();
    assert!(m_tensor(&iso, 1.7).unwrap().max_abs() < 1e-14);
}

#[test]
fn moments() {
    let s1 = OrientationDomain::Circle;
    let s2 = OrientationDomain::Sphere;
    assert!(close(
        monomial_moment(s1, &[6, 0]).unwrap(),
        2.0 * PI * 15.0 / 48.0,
        1e-15
    ));
    assert!(close(
        monomial_moment(s2, &[2, 2, 2]).unwrap(),
        4.0 * PI / 105.0,
        1e-15
    ));
    assert_eq!(monomial_moment(s2, &[1, 2, 2]).unwrap(), 0.0);
}

#[test]
fn appendix_groups_at_zero_tau() {
    let cf = isotropic_closed_forms(3, 1.0, 1680.0, 0.0).unwrap();
    let values: Vec<f64> = cf.d_groups.iter().map(|g| g.1).collect();
    assert_eq!(values, vec![15.0, 3.0, 3.0, 3.0, 3.0, 1.0, 1.0]);
    let cf = isotropic_closed_forms(2, 1.0, 256.0, 0.0).unwrap();
    let values: Vec<f64> = cf.d_groups.iter().map(|g| g.1).collect();
    assert_eq!(values, vec![5.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
}

#[test]
fn ambiguous_lines_resolved_by_quadrature() {
    assert_eq!(THREE_D5_FACTOR, 1.0 / 3.0);
    assert_eq!(THREE_D6_FACTOR, 3.0);
    let (ke, kt, l) = (2.0, 0.7, 1.2);
    let d = d_tensor(&StiffnessDistribution::isotropic(3, ke, kt).unwrap(), l).unwrap();
    let l4 = l.powi(4);
    let d5 = (ke - 32.0 * kt) * l4 / 560.0;
    let d6 = (ke + 24.0 * kt) * l4 / 1680.0;
    assert!(close(d.get_named("112233").unwrap(), d5 / 3.0, 1e-13));
    assert!(close(d.get_named("121121").unwrap(), 3.0 * d6, 1e-13));
    let labels: Vec<&str> = D_GROUPS_3D[4]
        .lines
        .iter()
        .map(|l| l.printed_label)
        .collect();
    assert_eq!(labels.iter().filter(|l| **l == "3d5").count(), 6);
}

#[test]
fn erratum_component() {
    assert_eq!(isotropic::APPENDIX_ERRATA, &[("212222", "212111")]);
    let d = d_tensor(&StiffnessDistribution::isotropic(3, 1.0, 1.0).unwrap(), 1.0).unwrap();
    assert!(d.get_named("212222").unwrap().abs() < 1e-15);
    assert!(close(d.get_named("212111").unwrap(), 19.0 / 1680.0, 1e-13));
}

#[test]
fn lame_and_engineering() {
    assert_eq!(lame_from_k(2, 1.0, 8.0, 0.0).unwrap(), (1.0, 1.0));
    let (l, m) = lame_from_k(3, 1.0, 15.0, 0.0).unwrap();
    assert!(close(l, 1.0, 1e-15) && close(m, 1.0, 1e-15));
    let e = engineering_from_k(2, 1.0, 4.0, 1.0).unwrap();
    assert_eq!((e.young, e.poisson), (2.0, 0.0));
    let k = k_from_engineering(2, 1.0, 1.0, 1.0 / 3.0).unwrap();
    assert!(close(k.kbar_eta, 3.0, 1e-14) && k.kbar_tau.abs() < 1e-15);
    let k = k_from_engineering(3, 1.0, 1.0, 0.25).unwrap();
    assert!(close(k.kbar_eta, 6.0, 1e-14) && k.kbar_tau.abs() < 1e-15);
}

#[test]
fn gradient_coefficients() {
    let cf = isotropic_closed_forms(3, 1.0, 1680.0, 0.0).unwrap();
    let c = iso_params_from_d(&cf.d, 1e-12).unwrap();
    assert_eq!(c.as_array(), [1.0; 5]);
    assert_eq!(mindlin_from_c(&c).as_array(), [2.0, 2.0, 2.0, 1.0, 2.0]);
    let c = iso_params_from_d(
        &isotropic_closed_forms(3, 1.0, 0.0, 1680.0).unwrap().d,
        1e-12,
    )
    .unwrap();
    for (got, want) in c.as_array().iter().zip([-32.0, 24.0, 24.0, 80.0, -32.0]) {
        assert!(close(*got, want, 1e-13));
    }
    let z = d_from_iso_params(&GradientCoefficients::default());
    assert_eq!(z.max_abs(), 0.0);
}

#[test]
fn dilation_energy() {
    let g = Tensor::from_fn(2, 2, |x| if x[0] == x[1] { 0.22 } else { 0.0 }).unwrap();
    let s = StrainState::new(g, Tensor::zeros(2, 3).unwrap()).unwrap();
    let dist = StiffnessDistribution::isotropic(2, 8.0, 0.0).unwrap();
    let u = energy_micro(&dist, &s, 1.0).unwrap();
    assert!(close(u, 0.1936, 1e-14));
    let t = identify(&dist, 1.0, &IdentifyOptions::default()).unwrap();
    assert!(close(
        energy_continuum(&t.c, &t.m, &t.d, &s).unwrap(),
        0.1936,
        1e-14
    ));
}

#[test]
fn legacy_gradient_tensor() {
    let dist = StiffnessDistribution::isotropic(2, 1.0, 1.0).unwrap();
    let legacy = IdentifyOptions::default().with_mode(DisplacementMode::Legacy);
    let corrected = d_tensor(&dist, 1.0).unwrap();
    let old = d_tensor_with(&dist, 1.0, &legacy).unwrap();
    // d4 = (1 + 52)/256 with corrected kinematics, 5/256 with the legacy ones.
    assert!(close(
        corrected.get_named("112112").unwrap(),
        53.0 / 256.0,
        1e-13
    ));
    assert!(close(old.get_named("112112").unwrap(), 5.0 / 256.0, 1e-13));
    let exact = d_tensor_with(
        &dist,
        1.0,
        &legacy.with_method(IntegrationMethod::ExactMoments),
    )
    .unwrap();
    assert!(granmech::tensor::max_abs_diff(&old, &exact).unwrap() < 1e-15);
}
