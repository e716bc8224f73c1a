//! Deformation kinematics of a grain pair.
//!
//! From a polynomial placement field `χ` we obtain the deformation gradient
//! `F = ∇χ`, its gradient `F_ab,c`, the Green–Saint-Venant strain
//! `G = ½(FᵀF − I)` and the strain gradient `G_ij,h`. The objective relative
//! displacement of a pair with orientation `ĉ` and spacing `L` is
//!
//! ```text
//! u_i = 2 G_ij ĉ_j L + (L²/2) H_ibc ĉ_b ĉ_c,    H_ibc = G_ib,c + G_ic,b − G_bc,i
//! ```
//!
//! [`DisplacementMode::Legacy`] keeps the older identification that used
//! `G_ib,c` alone in place of `H_ibc`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tensor::{check_dim, Tensor};

/// Tolerance on `|ĉ| = 1`.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Maximum total degree of a placement polynomial.
pub const MAX_PLACEMENT_DEGREE: u32 = 3;

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Rejects orientations that are not unit vectors; never renormalizes.
pub fn validate_orientation(c_hat: &[f64], dim: usize) -> Result<()> {
    if c_hat.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "orientation has {} components, expected {dim}",
            c_hat.len()
        )));
    }
    let norm = c_hat.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::Validation(format!(
            "orientation must be a unit vector (|ĉ| = {norm})"
        )));
    }
    Ok(())
}

pub(crate) fn validate_length(length: f64) -> Result<()> {
    if length.is_finite() && length > 0.0 {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "grain-pair length L must be positive and finite, got {length}"
        )))
    }
}

/// Placement map `χ: ℝᵈ → ℝᵈ` with polynomial components of degree ≤ 3.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementField {
    dim: usize,
    components: Vec<Polynomial>,
}

impl PlacementField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let dim = components.len();
        check_dim(dim)?;
        for (a, p) in components.iter().enumerate() {
            if p.nvars() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "component {a} has {} variables, expected {dim}",
                    p.nvars()
                )));
            }
            if p.degree() > MAX_PLACEMENT_DEGREE {
                return Err(Error::UnsupportedDegree {
                    degree: p.degree(),
                    cap: MAX_PLACEMENT_DEGREE,
                });
            }
            if p.terms().any(|(_, c)| !c.is_finite()) {
                return Err(Error::NonFinite(format!("coefficient of component {a}")));
            }
        }
        Ok(PlacementField { dim, components })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        PlacementField::dilation(dim, 1.0)
    }

    /// `χ(X) = α X`.
    pub fn dilation(dim: usize, alpha: f64) -> Result<Self> {
        check_dim(dim)?;
        PlacementField::new(
            (0..dim)
                .map(|a| Polynomial::variable(dim, a).scaled(alpha))
                .collect(),
        )
    }

    /// Random cubic placement `χ = X + (linear + quadratic + cubic terms)`.
    ///
    /// Linear coefficients are drawn from `[−amplitude, amplitude]`; higher
    /// order coefficients from a third of that range.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, amplitude: f64) -> Result<Self> {
        check_dim(dim)?;
        let mut components = Vec::with_capacity(dim);
        for a in 0..dim {
            let mut p = Polynomial::variable(dim, a);
            for exps in monomial_exponents(dim, MAX_PLACEMENT_DEGREE) {
                let deg: u32 = exps.iter().sum();
                let scale = match deg {
                    0 => continue,
                    1 => amplitude,
                    _ => amplitude / 3.0,
                };
                p.add_term(exps, rng.gen_range(-scale..=scale));
            }
            components.push(p);
        }
        PlacementField::new(components)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }
}

/// All exponent vectors in `dim` variables with total degree ≤ `max_degree`.
fn monomial_exponents(dim: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e);
                    p
                })
            })
            .collect();
    }
    out
}

/// Strain `G` (symmetric) and strain gradient `G_ij,h` (symmetric in i, j).
#[derive(Debug, Clone, PartialEq)]
pub struct StrainState {
    g: Tensor,
    grad_g: Tensor,
}

impl StrainState {
    /// Validates dimensions and symmetries (relative tolerance 1e−12).
    pub fn new(g: Tensor, grad_g: Tensor) -> Result<Self> {
        if g.rank() != 2 || grad_g.rank() != 3 || g.dim() != grad_g.dim() {
            return Err(Error::ShapeMismatch(format!(
                "strain must be rank 2 and strain gradient rank 3 of equal dimension, got ranks {} and {} in {}D/{}D",
                g.rank(),
                grad_g.rank(),
                g.dim(),
                grad_g.dim()
            )));
        }
        let tol = 1e-12 * g.max_abs().max(grad_g.max_abs()).max(1.0);
        let g_t = g.swap_positions(0, 1)?;
        let grad_t = grad_g.swap_positions(0, 1)?;
        if crate::tensor::max_abs_diff(&g, &g_t)? > tol {
            return Err(Error::Validation("strain G must be symmetric".into()));
        }
        if crate::tensor::max_abs_diff(&grad_g, &grad_t)? > tol {
            return Err(Error::Validation(
                "strain gradient G_ij,h must be symmetric in i, j".into(),
            ));
        }
        Ok(StrainState { g, grad_g })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Ok(StrainState {
            g: Tensor::zeros(dim, 2)?,
            grad_g: Tensor::zeros(dim, 3)?,
        })
    }

    /// Uniformly random symmetric `G` in `[−g_amp, g_amp]` and `∇G` in `[−grad_amp, grad_amp]`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        dim: usize,
        g_amp: f64,
        grad_amp: f64,
    ) -> Result<Self> {
        let mut g = Tensor::zeros(dim, 2)?;
        let mut grad_g = Tensor::zeros(dim, 3)?;
        for i in 0..dim {
            for j in i..dim {
                let v = rng.gen_range(-g_amp..=g_amp);
                g.set(&[i, j], v);
                g.set(&[j, i], v);
                for h in 0..dim {
                    let w = rng.gen_range(-grad_amp..=grad_amp);
                    grad_g.set(&[i, j, h], w);
                    grad_g.set(&[j, i, h], w);
                }
            }
        }
        StrainState::new(g, grad_g)
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn g(&self) -> &Tensor {
        &self.g
    }

    pub fn grad_g(&self) -> &Tensor {
        &self.grad_g
    }

    pub fn scaled(&self, factor: f64) -> StrainState {
        StrainState {
            g: self.g.scaled(factor),
            grad_g: self.grad_g.scaled(factor),
        }
    }
}

/// `F`, `∇F` and the derived strain measures at one material point.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicState {
    pub f: Tensor,
    /// `F_ab,c`, symmetric in (b, c).
    pub grad_f: Tensor,
    pub strain: StrainState,
}

/// Evaluates `F`, `∇F`, `G` and `∇G` of `chi` at `x` by exact differentiation.
pub fn kinematic_state(chi: &PlacementField, x: &[f64]) -> Result<KinematicState> {
    let d = chi.dim();
    if x.len() != d {
        return Err(Error::ShapeMismatch(format!(
            "point has {} coordinates, expected {d}",
            x.len()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("evaluation point".into()));
    }

    let first: Vec<Vec<Polynomial>> = chi
        .components()
        .iter()
        .map(|p| (0..d).map(|b| p.partial(b)).collect())
        .collect();
    let f = Tensor::from_fn(d, 2, |i| first[i[0]][i[1]].eval(x))?;
    let grad_f = Tensor::from_fn(d, 3, |i| first[i[0]][i[1]].partial(i[2]).eval(x))?;

    let g = Tensor::from_fn(d, 2, |ij| {
        let (i, j) = (ij[0], ij[1]);
        0.5 * ((0..d).map(|k| f.get(&[k, i]) * f.get(&[k, j])).sum::<f64>() - delta(i, j))
    })?;
    let grad_g = Tensor::from_fn(d, 3, |ijh| {
        let (i, j, h) = (ijh[0], ijh[1], ijh[2]);
        0.5 * (0..d)
            .map(|k| {
                grad_f.get(&[k, i, h]) * f.get(&[k, j]) + f.get(&[k, i]) * grad_f.get(&[k, j, h])
            })
            .sum::<f64>()
    })?;

    Ok(KinematicState {
        f,
        grad_f,
        strain: StrainState::new(g, grad_g)?,
    })
}

/// `H_ibc = F_ai F_ab,c`.
pub fn h_tensor_direct(state: &KinematicState) -> Tensor {
    let d = state.f.dim();
    Tensor::from_fn(d, 3, |ibc| {
        (0..d)
            .map(|a| state.f.get(&[a, ibc[0]]) * state.grad_f.get(&[a, ibc[1], ibc[2]]))
            .sum()
    })
    .expect("finite inputs give a finite contraction")
}

/// `H_ibc = G_ib,c + G_ic,b − G_bc,i`.
pub fn h_tensor_from_strain(strain: &StrainState) -> Tensor {
    let gg = strain.grad_g();
    Tensor::from_fn(strain.dim(), 3, |ibc| {
        let (i, b, c) = (ibc[0], ibc[1], ibc[2]);
        gg.get(&[i, b, c]) + gg.get(&[i, c, b]) - gg.get(&[b, c, i])
    })
    .expect("finite inputs give a finite combination")
}

/// Which second-order term enters the objective relative displacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DisplacementMode {
    /// `(L²/2)(G_ib,c + G_ic,b − G_bc,i) ĉ_b ĉ_c`.
    #[default]
    Corrected,
    /// `(L²/2) G_ib,c ĉ_b ĉ_c`, the pre-correction identification.
    Legacy,
}

impl DisplacementMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DisplacementMode::Corrected => "corrected",
            DisplacementMode::Legacy => "legacy",
        }
    }
}

/// Objective relative displacement `u^np` of a pair with orientation `c_hat` and spacing `length`.
pub fn objective_relative_displacement(
    strain: &StrainState,
    c_hat: &[f64],
    length: f64,
    mode: DisplacementMode,
) -> Result<Vec<f64>> {
    let d = strain.dim();
    validate_orientation(c_hat, d)?;
    validate_length(length)?;
    let g = strain.g();
    let gg = strain.grad_g();
    let second = match mode {
        DisplacementMode::Corrected => h_tensor_from_strain(strain),
        DisplacementMode::Legacy => gg.clone(),
    };
    Ok((0..d)
        .map(|i| {
            let first: f64 = (0..d).map(|j| g.get(&[i, j]) * c_hat[j]).sum();
            let mut quad = 0.0;
            for b in 0..d {
                for c in 0..d {
                    quad += second.get(&[i, b, c]) * c_hat[b] * c_hat[c];
                }
            }
            2.0 * first * length + 0.5 * length * length * quad
        })
        .collect())
}

/// Normal scalar `u_η = ½ u^np·ĉ` and tangential vector `u_τ = u^np − 2u_η ĉ`.
pub fn project_displacement(u_np: &[f64], c_hat: &[f64]) -> Result<(f64, Vec<f64>)> {
    validate_orientation(c_hat, u_np.len())?;
    let u_eta = 0.5 * u_np.iter().zip(c_hat).map(|(u, c)| u * c).sum::<f64>();
    let u_tau = u_np
        .iter()
        .zip(c_hat)
        .map(|(u, c)| u - 2.0 * u_eta * c)
        .collect();
    Ok((u_eta, u_tau))
}

/// Relative displacement of one grain pair and its projections.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDisplacement {
    pub u_np: Vec<f64>,
    pub u_eta: f64,
    pub u_tau: Vec<f64>,
    pub c_hat: Vec<f64>,
    pub length: f64,
}

impl PairDisplacement {
    pub fn u_tau_squared(&self) -> f64 {
        self.u_tau.iter().map(|v| v * v).sum()
    }
}

pub fn pair_displacement(
    strain: &StrainState,
    c_hat: &[f64],
    length: f64,
    mode: DisplacementMode,
) -> Result<PairDisplacement> {
    let u_np = objective_relative_displacement(strain, c_hat, length, mode)?;
    let (u_eta, u_tau) = project_displacement(&u_np, c_hat)?;
    Ok(PairDisplacement {
        u_np,
        u_eta,
        u_tau,
        c_hat: c_hat.to_vec(),
        length,
    })
}

/// `(u_η², |u_τ|²)` from the expanded polynomial forms in `G`, `∇G`, `ĉ` and `L`
/// (corrected kinematics), without forming `u^np`.
pub fn squared_projections_closed_form(
    strain: &StrainState,
    c_hat: &[f64],
    length: f64,
) -> Result<(f64, f64)> {
    let d = strain.dim();
    validate_orientation(c_hat, d)?;
    validate_length(length)?;
    let g = |i: usize, j: usize| strain.g().get(&[i, j]);
    let gg = |i: usize, j: usize, h: usize| strain.grad_g().get(&[i, j, h]);
    let c = c_hat;
    let (l2, l3, l4) = (length.powi(2), length.powi(3), length.powi(4));

    // u_η² = L² G_ij G_ab ĉ_iĉ_jĉ_aĉ_b + L³/2 G_ij G_ab,c ĉ_iĉ_jĉ_aĉ_bĉ_c
    //        + L⁴/16 G_ij,h G_ab,c ĉ_iĉ_jĉ_hĉ_aĉ_bĉ_c
    let mut eta_sq = 0.0;
    // u_τ² collected by order in L.
    let (mut tau2, mut tau3, mut tau4) = (0.0, 0.0, 0.0);

    for a in 0..d {
        for b in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let gab_gij = g(a, b) * g(i, j);
                    eta_sq += l2 * gab_gij * c[i] * c[j] * c[a] * c[b];
                    tau2 += gab_gij
                        * (delta(i, a) * c[b] * c[j]
                            + delta(j, a) * c[b] * c[i]
                            + delta(i, b) * c[a] * c[j]
                            + delta(j, b) * c[a] * c[i]
                            - 4.0 * c[i] * c[j] * c[a] * c[b]);
                    for h in 0..d {
                        eta_sq +=
                            0.5 * l3 * g(i, j) * gg(a, b, h) * c[i] * c[j] * c[a] * c[b] * c[h];
                        tau3 += g(a, b)
                            * gg(i, j, h)
                            * (2.0 * delta(i, a) * c[b] * c[h] * c[j]
                                + 2.0 * delta(j, a) * c[b] * c[h] * c[i]
                                - 2.0 * delta(h, a) * c[b] * c[j] * c[i]
                                + 2.0 * delta(i, b) * c[a] * c[h] * c[j]
                                + 2.0 * delta(j, b) * c[a] * c[h] * c[i]
                                - 2.0 * delta(h, b) * c[a] * c[j] * c[i]
                                - 4.0 * c[i] * c[j] * c[a] * c[b] * c[h]);
                        for cc in 0..d {
                            let prod = gg(a, b, cc) * gg(i, j, h);
                            eta_sq += l4 / 16.0 * prod * c[i] * c[j] * c[h] * c[a] * c[b] * c[cc];
                            tau4 += prod
                                * (delta(i, a) * c[cc] * c[b] * c[h] * c[j]
                                    + delta(j, a) * c[cc] * c[b] * c[h] * c[i]
                                    - delta(h, a) * c[cc] * c[b] * c[j] * c[i]
                                    + delta(i, b) * c[cc] * c[a] * c[h] * c[j]
                                    + delta(j, b) * c[cc] * c[a] * c[h] * c[i]
                                    - delta(h, b) * c[cc] * c[a] * c[j] * c[i]
                                    - delta(i, cc) * c[b] * c[a] * c[h] * c[j]
                                    - delta(j, cc) * c[b] * c[a] * c[h] * c[i]
                                    + delta(h, cc) * c[b] * c[a] * c[j] * c[i]
                                    - c[i] * c[j] * c[h] * c[a] * c[b] * c[cc]);
                        }
                    }
                }
            }
        }
    }
    let tau_sq = l2 * tau2 + 0.5 * l3 * tau3 + 0.25 * l4 * tau4;
    Ok((eta_sq, tau_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::max_abs_diff;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(v: &[f64]) -> Vec<f64> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter().map(|x| x / n).collect()
    }

    #[test]
    fn identity_placement_is_undeformed() {
        for dim in [2, 3] {
            let chi = PlacementField::identity(dim).unwrap();
            let s = kinematic_state(&chi, &vec![0.3; dim]).unwrap();
            assert_eq!(s.strain.g().max_abs(), 0.0);
            assert_eq!(s.strain.grad_g().max_abs(), 0.0);
            for a in 0..dim {
                assert_eq!(s.f.get(&[a, a]), 1.0);
            }
        }
    }

    #[test]
    fn uniform_dilation() {
        let chi = PlacementField::dilation(3, 1.2).unwrap();
        let s = kinematic_state(&chi, &[0.1, -0.4, 2.0]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 0.22 } else { 0.0 };
                assert!((s.strain.g().get(&[i, j]) - expected).abs() < 1e-15);
            }
        }
        assert_eq!(s.strain.grad_g().max_abs(), 0.0);

        let c = unit(&[1.0, 2.0, -0.5]);
        let u = objective_relative_displacement(&s.strain, &c, 1.0, DisplacementMode::Corrected)
            .unwrap();
        for k in 0..3 {
            assert!((u[k] - 0.44 * c[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn placement_degree_cap() {
        let quartic = Polynomial::zero(2).with_term(vec![4, 0], 1.0);
        let err = PlacementField::new(vec![quartic, Polynomial::variable(2, 1)]).unwrap_err();
        assert_eq!(err, Error::UnsupportedDegree { degree: 4, cap: 3 });
    }

    #[test]
    fn h_direct_edge_cases() {
        let chi = PlacementField::dilation(2, 0.7).unwrap();
        let s = kinematic_state(&chi, &[1.0, 1.0]).unwrap();
        assert_eq!(h_tensor_direct(&s).max_abs(), 0.0);

        // F = I at the origin: H equals ∇F.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let chi = PlacementField::random(&mut rng, 3, 0.3).unwrap();
        let mut comps = chi.components().to_vec();
        for (a, p) in comps.iter_mut().enumerate() {
            let mut q = Polynomial::variable(3, a);
            for (e, c) in p.terms() {
                if e.iter().sum::<u32>() >= 2 {
                    q.add_term(e.to_vec(), c);
                }
            }
            *p = q;
        }
        let chi = PlacementField::new(comps).unwrap();
        let s = kinematic_state(&chi, &[0.0, 0.0, 0.0]).unwrap();
        assert!(max_abs_diff(&h_tensor_direct(&s), &s.grad_f).unwrap() < 1e-15);
    }

    #[test]
    fn h_from_strain_single_component() {
        let mut gg = Tensor::zeros(2, 3).unwrap();
        gg.set(&[0, 0, 1], 1.0);
        let strain = StrainState::new(Tensor::zeros(2, 2).unwrap(), gg).unwrap();
        let h = h_tensor_from_strain(&strain);
        for (idx, v) in h.iter() {
            let expected = match idx.as_slice() {
                [0, 0, 1] | [0, 1, 0] => 1.0,
                [1, 0, 0] => -1.0,
                _ => 0.0,
            };
            assert_eq!(v, expected, "{idx:?}");
        }
        assert_eq!(
            h_tensor_from_strain(&StrainState::zero(3).unwrap()).max_abs(),
            0.0
        );
    }

    #[test]
    fn strain_state_rejects_asymmetry() {
        let mut g = Tensor::zeros(2, 2).unwrap();
        g.set(&[0, 1], 0.1);
        assert!(StrainState::new(g, Tensor::zeros(2, 3).unwrap()).is_err());
        let mut gg = Tensor::zeros(2, 3).unwrap();
        gg.set(&[0, 1, 1], 0.1);
        assert!(StrainState::new(Tensor::zeros(2, 2).unwrap(), gg).is_err());
        assert!(
            StrainState::new(Tensor::zeros(2, 2).unwrap(), Tensor::zeros(3, 3).unwrap()).is_err()
        );
    }

    #[test]
    fn displacement_validation() {
        let s = StrainState::zero(2).unwrap();
        let err =
            objective_relative_displacement(&s, &[1.0, 1.0], 1.0, DisplacementMode::Corrected);
        assert!(matches!(err, Err(Error::Validation(_))));
        let err =
            objective_relative_displacement(&s, &[1.0, 0.0], 0.0, DisplacementMode::Corrected);
        assert!(matches!(err, Err(Error::Validation(_))));
        let err = objective_relative_displacement(&s, &[1.0, 0.0], -1.0, DisplacementMode::Legacy);
        assert!(matches!(err, Err(Error::Validation(_))));
        assert!(project_displacement(&[0.1, 0.2], &[0.6, 0.6]).is_err());
        let u = objective_relative_displacement(&s, &[0.0, 1.0], 2.0, DisplacementMode::Corrected)
            .unwrap();
        assert_eq!(u, vec![0.0, 0.0]);
    }

    #[test]
    fn projections_of_pure_normal_and_tangential() {
        let c = unit(&[3.0, 4.0]);
        let u: Vec<f64> = c.iter().map(|x| 0.44 * x).collect();
        let (eta, tau) = project_displacement(&u, &c).unwrap();
        assert!((eta - 0.22).abs() < 1e-15);
        assert!(tau.iter().all(|t| t.abs() < 1e-15));

        let perp = vec![-c[1] * 0.5, c[0] * 0.5];
        let (eta, tau) = project_displacement(&perp, &c).unwrap();
        assert!(eta.abs() < 1e-16);
        assert_eq!(tau, perp);
    }

    #[test]
    fn simple_shear_closed_form() {
        // G_12 = G_21 = γ/2, ∇G = 0, ĉ = e₁, L = 1.
        let gamma = 0.1;
        let mut g = Tensor::zeros(2, 2).unwrap();
        g.set(&[0, 1], gamma / 2.0);
        g.set(&[1, 0], gamma / 2.0);
        let strain = StrainState::new(g, Tensor::zeros(2, 3).unwrap()).unwrap();
        let (eta_sq, tau_sq) = squared_projections_closed_form(&strain, &[1.0, 0.0], 1.0).unwrap();
        assert!(eta_sq.abs() < 1e-16);
        assert!((tau_sq - 0.01).abs() < 1e-15);

        let direct =
            pair_displacement(&strain, &[1.0, 0.0], 1.0, DisplacementMode::Corrected).unwrap();
        assert!((direct.u_tau_squared() - 0.01).abs() < 1e-15);
    }

    #[test]
    fn legacy_and_corrected_agree_without_gradient() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = StrainState::random(&mut rng, 3, 0.2, 0.0).unwrap();
        let c = unit(&[0.2, -0.7, 0.4]);
        let a = objective_relative_displacement(&s, &c, 1.3, DisplacementMode::Corrected).unwrap();
        let b = objective_relative_displacement(&s, &c, 1.3, DisplacementMode::Legacy).unwrap();
        assert_eq!(a, b);
    }
}
