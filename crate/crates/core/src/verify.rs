//! Seeded invariant checks runnable at runtime.
//!
//! Every check draws its random inputs from a ChaCha8 stream seeded by
//! [`VerifyConfig::seed`], so a given configuration always produces the same
//! report.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::energy::{energy_continuum, energy_micro};
use crate::error::Result;
use crate::identification::isotropic::{self, D_PROBES_3D, GRADIENT_COEFFICIENTS_3D};
use crate::identification::{
    d_from_iso_params, engineering_from_k, identify, iso_params_from_d, isotropic_closed_forms,
    k_from_engineering, m_tensor, mindlin_from_c, GradientCoefficients, IdentifyOptions,
    StiffnessDistribution,
};
use crate::kinematics::{
    h_tensor_direct, h_tensor_from_strain, kinematic_state, DisplacementMode, PlacementField,
    StrainState,
};
use crate::tensor::{
    check_symmetry, component_name, max_abs_diff, parse_digits, SymmetrySpec, Tensor,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random samples per dimension for the sampled checks.
    pub samples: usize,
    /// Relative tolerance for closed-form and energy comparisons.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20_240_601,
            samples: 100,
            tol: 1e-10,
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    /// Largest observed violation measure (relative or absolute, see `detail`).
    pub max_violation: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Running maximum with the location where it occurred.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            at: String::from("-"),
        }
    }

    fn update(&mut self, value: f64, at: impl FnOnce() -> String) {
        if value > self.value || value.is_nan() {
            self.value = value;
            self.at = at();
        }
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn report(name: &'static str, worst: Worst, tol: f64, what: &str) -> CheckReport {
    CheckReport {
        name,
        passed: worst.value <= tol,
        max_violation: worst.value,
        tolerance: tol,
        detail: format!("{what}; worst at {}", worst.at),
    }
}

fn rng_for(config: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

/// `max|H_direct − H_from_strain|` over random cubic placements, near-identity
/// (tolerance 1e−12) and wild (tolerance 1e−9) deformation gradients.
pub fn check_h_identity(config: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut rng = rng_for(config, 1);
    let mut out = Vec::new();
    for (name, amplitude, tol) in [
        ("h_identity_near", 1e-3, 1e-12),
        ("h_identity_wild", 0.6, 1e-9),
    ] {
        let mut worst = Worst::new();
        let mut max_f: f64 = 0.0;
        for dim in [2, 3] {
            for s in 0..config.samples {
                // Redraw until every F_ij lies in [-2, 2].
                let state = loop {
                    let chi = PlacementField::random(&mut rng, dim, amplitude)?;
                    let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                    let state = kinematic_state(&chi, &x)?;
                    if state.f.max_abs() <= 2.0 {
                        break state;
                    }
                };
                max_f = max_f.max(state.f.max_abs());
                let diff = max_abs_diff(
                    &h_tensor_direct(&state),
                    &h_tensor_from_strain(&state.strain),
                )?;
                worst.update(diff, || format!("{dim}D sample {s}"));
            }
        }
        let mut r = report(name, worst, tol, "absolute max |H_direct - H_from_strain|");
        r.detail.push_str(&format!("; max |F_ij| = {max_f:.3}"));
        out.push(r);
    }
    Ok(out)
}

fn random_triple(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    (
        rng.gen_range(0.1..10.0),
        rng.gen_range(0.0..5.0),
        rng.gen_range(0.5..2.0),
    )
}

/// Compares a quadrature tensor with its closed form: relative error on
/// listed components, absolute size of the others.
fn compare_entries(
    prefix: &str,
    quad: &Tensor,
    closed: &Tensor,
    rel: &mut Worst,
    zero: &mut Worst,
    tag: &str,
) {
    for (idx, q) in quad.iter() {
        let c = closed.get(&idx);
        if c == 0.0 {
            zero.update(q.abs(), || {
                format!("{} {tag}", component_name(prefix, &idx))
            });
        } else {
            rel.update(rel_err(q, c), || {
                format!("{} {tag}", component_name(prefix, &idx))
            });
        }
    }
}

/// Every `ℂ` and `𝔻` component of the closed-form tables against quadrature.
pub fn check_closed_forms(config: &VerifyConfig, dim: usize) -> Result<Vec<CheckReport>> {
    let mut rng = rng_for(config, 10 + dim as u64);
    let mut rel = Worst::new();
    let mut zero = Worst::new();
    let mut probes = Worst::new();
    let trials = config.samples.clamp(10, 25);
    for t in 0..trials {
        let (ke, kt, l) = random_triple(&mut rng);
        let tag = format!("(kbar_eta={ke:.4}, kbar_tau={kt:.4}, L={l:.4})");
        let dist = StiffnessDistribution::isotropic(dim, ke, kt)?;
        let quad = identify(&dist, l, &IdentifyOptions::default())?;
        let closed = isotropic_closed_forms(dim, l, ke, kt)?;
        compare_entries("C", &quad.c, &closed.c, &mut rel, &mut zero, &tag);
        compare_entries("D", &quad.d, &closed.d, &mut rel, &mut zero, &tag);
        if dim == 3 {
            let l4 = l.powi(4);
            for (digits, f) in D_PROBES_3D {
                let q = quad.d.get(&parse_digits(digits, 3)?);
                probes.update(rel_err(q, f.value(l4, ke, kt)), || {
                    format!("D_{digits} trial {t}")
                });
            }
            let c = iso_params_from_d(&quad.d, config.tol.max(1e-10))?;
            for ((name, f), v) in GRADIENT_COEFFICIENTS_3D.iter().zip(c.as_array()) {
                probes.update(rel_err(v, f.value(l4, ke, kt)), || {
                    format!("{name} trial {t}")
                });
            }
        }
    }
    let (n_rel, n_zero) = if dim == 2 {
        ("closed_form_2d", "closed_form_2d_zeros")
    } else {
        ("closed_form_3d", "closed_form_3d_zeros")
    };
    let mut out = vec![
        report(
            n_rel,
            rel,
            config.tol,
            "relative error of listed C/D components",
        ),
        report(
            n_zero,
            zero,
            1e-12,
            "absolute value of unlisted C/D components",
        ),
    ];
    if dim == 3 {
        out.push(report(
            "closed_form_3d_probes",
            probes,
            config.tol,
            "relative error of the five probe components and c3..c7",
        ));
    }
    Ok(out)
}

/// The nonzero pattern of the quadrature `𝔻` equals the table's component set.
pub fn check_census(dim: usize) -> Result<CheckReport> {
    let (ke, kt) = (1.7, 0.9);
    let dist = StiffnessDistribution::isotropic(dim, ke, kt)?;
    let d = identify(&dist, 1.0, &IdentifyOptions::default())?.d;
    let closed = isotropic_closed_forms(dim, 1.0, ke, kt)?.d;
    let listed: usize = isotropic::d_groups(dim)?
        .iter()
        .map(|g| g.components().count())
        .sum();
    let cutoff = 1e-12 * d.max_abs();
    let mut nonzero = 0usize;
    let mut mismatched = Vec::new();
    for (idx, v) in d.iter() {
        let quad_nonzero = v.abs() > cutoff;
        nonzero += usize::from(quad_nonzero);
        if quad_nonzero != (closed.get(&idx) != 0.0) {
            mismatched.push(component_name("D", &idx));
        }
    }
    let mut worst = Worst::new();
    worst.update(mismatched.len() as f64, || mismatched.join(" "));
    let mut r = report(
        if dim == 2 { "census_2d" } else { "census_3d" },
        worst,
        0.0,
        "components whose zero/nonzero status differs from the table",
    );
    r.detail.push_str(&format!(
        "; {nonzero} nonzero by quadrature, {listed} listed"
    ));
    Ok(r)
}

/// `𝕄` vanishes for isotropic input and matches `5π/32` for the biased example.
pub fn check_m_vanishes(config: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut rng = rng_for(config, 20);
    let mut iso = Worst::new();
    for dim in [2, 3] {
        for _ in 0..config.samples.clamp(5, 20) {
            let (ke, kt, l) = random_triple(&mut rng);
            let m = m_tensor(&StiffnessDistribution::isotropic(dim, ke, kt)?, l)?;
            iso.update(m.max_abs(), || {
                format!("{dim}D kbar=({ke:.3},{kt:.3}) L={l:.3}")
            });
        }
    }
    let biased = StiffnessDistribution::biased_c1(2, 1.0, 1.0, 0.0)?;
    let m11111 = m_tensor(&biased, 1.0)?.get(&[0, 0, 0, 0, 0]);
    let mut ex = Worst::new();
    ex.update(rel_err(m11111, 5.0 * PI / 32.0), || {
        format!("M_11111 = {m11111:.17e}")
    });
    Ok(vec![
        report(
            "m_isotropic_zero",
            iso,
            1e-12,
            "absolute max |M| for isotropic input",
        ),
        report(
            "m_biased_example",
            ex,
            1e-12,
            "relative error of M_11111 against 5 pi/32",
        ),
    ])
}

/// Micro/continuum energy equivalence for isotropic and both built-in
/// anisotropic distributions.
pub fn check_energy(config: &VerifyConfig) -> Result<CheckReport> {
    let mut rng = rng_for(config, 30);
    let mut worst = Worst::new();
    let mut negative = 0usize;
    for dim in [2, 3] {
        let dists = [
            (
                "isotropic",
                StiffnessDistribution::isotropic(dim, 2.5, 0.8)?,
            ),
            (
                "biased-c1",
                StiffnessDistribution::biased_c1(dim, 1.0, 0.6, 0.4)?,
            ),
            (
                "fabric-c1sq",
                StiffnessDistribution::fabric_c1sq(dim, 1.0, 1.5, 0.3)?,
            ),
        ];
        for (name, dist) in &dists {
            let l = 1.1;
            let t = identify(dist, l, &IdentifyOptions::default())?;
            for s in 0..config.samples {
                let strain = StrainState::random(&mut rng, dim, 0.3, 1.0)?;
                let micro = energy_micro(dist, &strain, l)?;
                let cont = energy_continuum(&t.c, &t.m, &t.d, &strain)?;
                if micro < 0.0 {
                    negative += 1;
                }
                let v = (micro - cont).abs() / micro.abs().max(1.0);
                worst.update(v, || format!("{dim}D {name} sample {s}"));
            }
        }
    }
    let mut r = report(
        "energy_equivalence",
        worst,
        config.tol,
        "|U_micro - U_continuum| / max(1, |U|)",
    );
    if negative > 0 {
        r.passed = false;
        r.detail
            .push_str(&format!("; {negative} negative energies"));
    }
    Ok(r)
}

/// `k̄ ↔ (Y, ν)`, `𝔻 ↔ (c₃ … c₇)` roundtrips and the Mindlin map.
pub fn check_conversions(config: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut rng = rng_for(config, 40);
    let mut eng = Worst::new();
    for dim in [2, 3] {
        for s in 0..config.samples {
            let (ke, kt, l) = random_triple(&mut rng);
            let e = engineering_from_k(dim, l, ke, kt)?;
            let back = k_from_engineering(dim, l, e.young, e.poisson)?;
            // k̄_τ is compared on the scale of k̄_η: it may be (near) zero.
            let v = rel_err(back.kbar_eta, ke).max((back.kbar_tau - kt).abs() / ke.max(kt));
            eng.update(v, || format!("{dim}D sample {s}: kbar=({ke},{kt}) L={l}"));
        }
    }
    let mut iso = Worst::new();
    for s in 0..config.samples {
        let c = GradientCoefficients {
            c3: rng.gen_range(-1.0..1.0),
            c4: rng.gen_range(-1.0..1.0),
            c5: rng.gen_range(-1.0..1.0),
            c6: rng.gen_range(-1.0..1.0),
            c7: rng.gen_range(-1.0..1.0),
        };
        let d = d_from_iso_params(&c);
        let back = iso_params_from_d(&d, 1e-12)?;
        let v = c
            .as_array()
            .iter()
            .zip(back.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
            / c.as_array().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        iso.update(v, || format!("c sample {s}"));
        let (ke, kt, l) = random_triple(&mut rng);
        let closed = isotropic_closed_forms(3, l, ke, kt)?.d;
        let rebuilt = d_from_iso_params(&iso_params_from_d(&closed, 1e-12)?);
        let v = max_abs_diff(&closed, &rebuilt)? / closed.max_abs();
        iso.update(v, || format!("closed-form D sample {s}"));
    }
    let mut mindlin = Worst::new();
    let spot = [
        ([1.0, 1.0, 1.0, 1.0, 1.0], [2.0, 2.0, 2.0, 1.0, 2.0]),
        ([0.5, -1.0, 3.0, 4.0, -2.0], [1.0, -2.0, 6.0, 4.0, -4.0]),
    ];
    for (c, a) in spot {
        let got = mindlin_from_c(&GradientCoefficients {
            c3: c[0],
            c4: c[1],
            c5: c[2],
            c6: c[3],
            c7: c[4],
        })
        .as_array();
        let v = got
            .iter()
            .zip(a)
            .map(|(g, e)| (g - e).abs())
            .fold(0.0, f64::max);
        mindlin.update(v, || format!("c = {c:?}"));
    }
    Ok(vec![
        report(
            "roundtrip_engineering",
            eng,
            1e-12,
            "relative k-bar roundtrip error",
        ),
        report(
            "roundtrip_gradient_coefficients",
            iso,
            1e-12,
            "relative D <-> c3..c7 roundtrip error",
        ),
        report(
            "mindlin_map",
            mindlin,
            0.0,
            "absolute Mindlin spot-check error",
        ),
    ])
}

/// Per-group comparison of corrected and legacy `𝔻`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegacyGroupDiff {
    pub group: String,
    /// First listed component of the group, e.g. `D_112112`.
    pub component: String,
    pub corrected: f64,
    pub legacy: f64,
    pub relative_difference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegacyComparison {
    pub c_max_difference: f64,
    pub m_max_difference: f64,
    pub d_max_difference: f64,
    pub groups: Vec<LegacyGroupDiff>,
}

/// Identifies with both kinematics and compares group by group.
pub fn compare_legacy(dist: &StiffnessDistribution, length: f64) -> Result<LegacyComparison> {
    let dim = dist.dim();
    let corrected = identify(dist, length, &IdentifyOptions::default())?;
    let legacy = identify(
        dist,
        length,
        &IdentifyOptions::default().with_mode(DisplacementMode::Legacy),
    )?;
    let mut groups = Vec::new();
    for g in isotropic::d_groups(dim)? {
        let (digits, _) = g.components().next().expect("groups are nonempty");
        let idx = parse_digits(digits, dim)?;
        let a = corrected.d.get(&idx);
        let b = legacy.d.get(&idx);
        groups.push(LegacyGroupDiff {
            group: g.name.to_string(),
            component: component_name("D", &idx),
            corrected: a,
            legacy: b,
            relative_difference: rel_err(a, b),
        });
    }
    Ok(LegacyComparison {
        c_max_difference: max_abs_diff(&corrected.c, &legacy.c)?,
        m_max_difference: max_abs_diff(&corrected.m, &legacy.m)?,
        d_max_difference: max_abs_diff(&corrected.d, &legacy.d)?,
        groups,
    })
}

/// Legacy kinematics leave `ℂ` unchanged but move at least one `𝔻` group by
/// more than 1% whenever `k̄_τ > 0`.
pub fn check_legacy(config: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut rng = rng_for(config, 50);
    let mut c_diff = Worst::new();
    let mut d_shortfall = Worst::new();
    for dim in [2, 3] {
        for s in 0..config.samples.clamp(5, 20) {
            let ke = rng.gen_range(0.1..10.0);
            let kt = rng.gen_range(0.1..5.0);
            let l = rng.gen_range(0.5..2.0);
            let dist = StiffnessDistribution::isotropic(dim, ke, kt)?;
            let cmp = compare_legacy(&dist, l)?;
            let scale = identify(&dist, l, &IdentifyOptions::default())?.c.max_abs();
            c_diff.update(cmp.c_max_difference / scale, || {
                format!("{dim}D sample {s}")
            });
            let best = cmp
                .groups
                .iter()
                .map(|g| g.relative_difference)
                .fold(0.0, f64::max);
            // Violation: how far the largest group change falls short of 1%.
            d_shortfall.update((0.01 - best).max(0.0), || {
                format!("{dim}D sample {s}: max group change {best:.4}")
            });
        }
    }
    Ok(vec![
        report(
            "legacy_c_identical",
            c_diff,
            1e-12,
            "relative max |C_corrected - C_legacy|",
        ),
        report(
            "legacy_d_differs",
            d_shortfall,
            0.0,
            "shortfall of the largest D-group change below 1%",
        ),
    ])
}

/// Declared symmetries of `ℂ`, `𝕄`, `𝔻` for anisotropic input in both kinematics.
pub fn check_symmetries(config: &VerifyConfig) -> Result<CheckReport> {
    let mut worst = Worst::new();
    for dim in [2, 3] {
        for (name, dist) in [
            (
                "biased-c1",
                StiffnessDistribution::biased_c1(dim, 1.0, 0.8, 0.5)?,
            ),
            (
                "fabric-c1sq",
                StiffnessDistribution::fabric_c1sq(dim, 2.0, -0.4, 0.7)?,
            ),
        ] {
            for mode in [DisplacementMode::Corrected, DisplacementMode::Legacy] {
                let t = identify(&dist, 1.0, &IdentifyOptions::default().with_mode(mode))?;
                for (tensor, spec, label) in [
                    (&t.c, SymmetrySpec::classical(), "C"),
                    (&t.m, SymmetrySpec::coupling(), "M"),
                    (&t.d, SymmetrySpec::gradient(), "D"),
                ] {
                    let r = check_symmetry(tensor, &spec, config.tol)?;
                    let rel = r.max_violation / tensor.max_abs().max(f64::MIN_POSITIVE);
                    worst.update(rel, || format!("{dim}D {name} {} {label}", mode.as_str()));
                }
            }
        }
    }
    Ok(report(
        "tensor_symmetries",
        worst,
        config.tol,
        "relative symmetry violation",
    ))
}

/// Runs every check.
pub fn run_all(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    checks.extend(check_h_identity(config)?);
    checks.extend(check_closed_forms(config, 2)?);
    checks.extend(check_closed_forms(config, 3)?);
    checks.push(check_census(2)?);
    checks.push(check_census(3)?);
    checks.extend(check_m_vanishes(config)?);
    checks.push(check_energy(config)?);
    checks.extend(check_conversions(config)?);
    checks.extend(check_legacy(config)?);
    checks.push(check_symmetries(config)?);
    Ok(VerifyReport { checks })
}
