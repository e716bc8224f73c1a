use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quadrature::{OrientationDomain, QuadratureRule};
use crate::tensor::check_dim;

/// Pure function of the orientation `ĉ`.
pub type OrientationFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Orientation-resolved stiffness density `k(ĉ)` (per unit solid angle).
#[derive(Clone)]
pub enum StiffnessProfile {
    Constant(f64),
    /// Polynomial in the components of `ĉ`; admits exact moment integration.
    Polynomial(Polynomial),
    /// Arbitrary pure function of `ĉ`; integrated by quadrature only.
    Function(OrientationFn),
}

impl StiffnessProfile {
    pub fn eval(&self, c_hat: &[f64]) -> f64 {
        match self {
            StiffnessProfile::Constant(k) => *k,
            StiffnessProfile::Polynomial(p) => p.eval(c_hat),
            StiffnessProfile::Function(f) => f(c_hat),
        }
    }

    /// Polynomial form, when the profile has one.
    pub fn as_polynomial(&self, dim: usize) -> Option<Polynomial> {
        match self {
            StiffnessProfile::Constant(k) => Some(Polynomial::constant(dim, *k)),
            StiffnessProfile::Polynomial(p) => Some(p.clone()),
            StiffnessProfile::Function(_) => None,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            StiffnessProfile::Constant(k) => *k == 0.0,
            StiffnessProfile::Polynomial(p) => p.is_zero(),
            StiffnessProfile::Function(_) => false,
        }
    }
}

impl fmt::Debug for StiffnessProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StiffnessProfile::Constant(k) => f.debug_tuple("Constant").field(k).finish(),
            StiffnessProfile::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            StiffnessProfile::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Normal and tangential grain-pair stiffness over orientation space.
#[derive(Debug, Clone)]
pub struct StiffnessDistribution {
    dim: usize,
    k_eta: StiffnessProfile,
    k_tau: StiffnessProfile,
    integrated: Option<(f64, f64)>,
}

impl StiffnessDistribution {
    pub fn new(dim: usize, k_eta: StiffnessProfile, k_tau: StiffnessProfile) -> Result<Self> {
        check_dim(dim)?;
        for (name, profile) in [("k_eta", &k_eta), ("k_tau", &k_tau)] {
            match profile {
                StiffnessProfile::Constant(k) if !k.is_finite() => {
                    return Err(Error::NonFinite(format!("{name} = {k}")))
                }
                StiffnessProfile::Polynomial(p) if p.nvars() != dim => {
                    return Err(Error::ShapeMismatch(format!(
                        "{name} polynomial has {} variables, expected {dim}",
                        p.nvars()
                    )))
                }
                _ => {}
            }
        }
        Ok(StiffnessDistribution {
            dim,
            k_eta,
            k_tau,
            integrated: None,
        })
    }

    /// Orientation-independent stiffness with the given integrated values:
    /// `k = k̄ / 2π` on S¹ and `k = k̄ / 4π` on S².
    pub fn isotropic(dim: usize, kbar_eta: f64, kbar_tau: f64) -> Result<Self> {
        let measure = OrientationDomain::from_dim(dim)?.measure();
        if !kbar_eta.is_finite() || !kbar_tau.is_finite() {
            return Err(Error::NonFinite(format!(
                "integrated stiffness ({kbar_eta}, {kbar_tau})"
            )));
        }
        let mut dist = StiffnessDistribution::new(
            dim,
            StiffnessProfile::Constant(kbar_eta / measure),
            StiffnessProfile::Constant(kbar_tau / measure),
        )?;
        dist.integrated = Some((kbar_eta, kbar_tau));
        Ok(dist)
    }

    /// `k_η = κ(1 + βĉ₁)`, `k_τ = τ(1 + βĉ₁)`: odd-moment anisotropy.
    pub fn biased_c1(dim: usize, kappa: f64, beta: f64, tau: f64) -> Result<Self> {
        check_dim(dim)?;
        let shape = Polynomial::constant(dim, 1.0).with_term(unit_exponent(dim, 0, 1), beta);
        StiffnessDistribution::new(
            dim,
            StiffnessProfile::Polynomial(shape.scaled(kappa)),
            StiffnessProfile::Polynomial(shape.scaled(tau)),
        )
    }

    /// `k_η = κ(1 + βĉ₁²)`, `k_τ = τ(1 + βĉ₁²)`: even-moment (fabric) anisotropy.
    pub fn fabric_c1sq(dim: usize, kappa: f64, beta: f64, tau: f64) -> Result<Self> {
        check_dim(dim)?;
        let shape = Polynomial::constant(dim, 1.0).with_term(unit_exponent(dim, 0, 2), beta);
        StiffnessDistribution::new(
            dim,
            StiffnessProfile::Polynomial(shape.scaled(kappa)),
            StiffnessProfile::Polynomial(shape.scaled(tau)),
        )
    }

    pub fn zero(dim: usize) -> Result<Self> {
        StiffnessDistribution::isotropic(dim, 0.0, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k_eta(&self, c_hat: &[f64]) -> f64 {
        self.k_eta.eval(c_hat)
    }

    pub fn k_tau(&self, c_hat: &[f64]) -> f64 {
        self.k_tau.eval(c_hat)
    }

    pub fn eta_profile(&self) -> &StiffnessProfile {
        &self.k_eta
    }

    pub fn tau_profile(&self) -> &StiffnessProfile {
        &self.k_tau
    }

    /// `(k̄_η, k̄_τ)` when the distribution was built as isotropic.
    pub fn integrated(&self) -> Option<(f64, f64)> {
        self.integrated
    }

    pub fn is_zero(&self) -> bool {
        self.k_eta.is_zero() && self.k_tau.is_zero()
    }

    /// Spot-checks nonnegativity of both stiffnesses at the nodes of `rule`.
    ///
    /// Negative values are reported, never rejected.
    pub fn admissibility_warnings(&self, rule: &QuadratureRule) -> Vec<String> {
        let mut warnings = Vec::new();
        for (name, profile) in [("k_eta", &self.k_eta), ("k_tau", &self.k_tau)] {
            let worst = rule
                .nodes()
                .iter()
                .map(|c| (profile.eval(c), c))
                .min_by(|a, b| a.0.total_cmp(&b.0));
            if let Some((v, c)) = worst {
                if v < 0.0 || !v.is_finite() {
                    warnings.push(format!(
                        "{name} is negative or non-finite ({v:e}) at orientation {c:?}; the stiffness is physically inadmissible"
                    ));
                }
            }
        }
        warnings
    }
}

fn unit_exponent(dim: usize, axis: usize, power: u32) -> Vec<u32> {
    let mut e = vec![0; dim];
    e[axis] = power;
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn isotropic_density_per_solid_angle() {
        let d2 = StiffnessDistribution::isotropic(2, 8.0, 2.0).unwrap();
        assert!((d2.k_eta(&[1.0, 0.0]) - 8.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((d2.k_tau(&[0.0, 1.0]) - 2.0 / (2.0 * PI)).abs() < 1e-15);
        let d3 = StiffnessDistribution::isotropic(3, 8.0, 2.0).unwrap();
        assert!((d3.k_eta(&[0.0, 0.0, 1.0]) - 8.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(d3.integrated(), Some((8.0, 2.0)));
    }

    #[test]
    fn built_in_anisotropic_shapes() {
        let b = StiffnessDistribution::biased_c1(2, 2.0, 0.5, 1.0).unwrap();
        assert!((b.k_eta(&[1.0, 0.0]) - 3.0).abs() < 1e-15);
        assert!((b.k_tau(&[-1.0, 0.0]) - 0.5).abs() < 1e-15);
        let f = StiffnessDistribution::fabric_c1sq(3, 1.0, 1.0, 0.0).unwrap();
        assert!((f.k_eta(&[-1.0, 0.0, 0.0]) - 2.0).abs() < 1e-15);
        assert_eq!(f.k_tau(&[1.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn negative_stiffness_is_warned_not_rejected() {
        let rule = QuadratureRule::default_for_dim(2).unwrap();
        let ok = StiffnessDistribution::biased_c1(2, 1.0, 1.0, 0.0).unwrap();
        assert!(ok.admissibility_warnings(&rule).is_empty());
        let bad = StiffnessDistribution::biased_c1(2, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(bad.admissibility_warnings(&rule).len(), 1);
        let neg_tau = StiffnessDistribution::isotropic(3, 1.0, -0.1).unwrap();
        let rule3 = QuadratureRule::default_for_dim(3).unwrap();
        assert!(neg_tau.admissibility_warnings(&rule3)[0].starts_with("k_tau"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(StiffnessDistribution::isotropic(4, 1.0, 1.0).is_err());
        assert!(StiffnessDistribution::isotropic(2, f64::INFINITY, 1.0).is_err());
        let p = Polynomial::constant(3, 1.0);
        assert!(StiffnessDistribution::new(
            2,
            StiffnessProfile::Polynomial(p),
            StiffnessProfile::Constant(0.0)
        )
        .is_err());
    }
}
