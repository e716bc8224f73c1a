//! Strain-energy density, micromechanical and continuum forms.

use crate::error::{Error, Result};
use crate::identification::StiffnessDistribution;
use crate::kinematics::{pair_displacement, validate_length, DisplacementMode, StrainState};
use crate::quadrature::QuadratureRule;
use crate::tensor::Tensor;

/// `U = ∫ (½k_η u_η² + ½k_τ|u_τ|²) dS` with the default rule and corrected kinematics.
pub fn energy_micro(
    dist: &StiffnessDistribution,
    strain: &StrainState,
    length: f64,
) -> Result<f64> {
    let rule = QuadratureRule::default_for_dim(dist.dim())?;
    energy_micro_with(dist, strain, length, &rule, DisplacementMode::Corrected)
}

pub fn energy_micro_with(
    dist: &StiffnessDistribution,
    strain: &StrainState,
    length: f64,
    rule: &QuadratureRule,
    mode: DisplacementMode,
) -> Result<f64> {
    validate_length(length)?;
    if strain.dim() != dist.dim() || rule.domain().dim() != dist.dim() {
        return Err(Error::ShapeMismatch(format!(
            "strain is {}D, distribution {}D, rule {}D",
            strain.dim(),
            dist.dim(),
            rule.domain().dim()
        )));
    }
    let mut total = 0.0;
    for (node, (c, w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let p = pair_displacement(strain, c, length, mode)?;
        let v = 0.5 * dist.k_eta(c) * p.u_eta * p.u_eta + 0.5 * dist.k_tau(c) * p.u_tau_squared();
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { node });
        }
        total += w * v;
    }
    Ok(total)
}

fn expect_shape(t: &Tensor, name: &str, dim: usize, rank: usize) -> Result<()> {
    if t.dim() != dim || t.rank() != rank {
        return Err(Error::ShapeMismatch(format!(
            "{name} must be {dim}D rank {rank}, got {}D rank {}",
            t.dim(),
            t.rank()
        )));
    }
    Ok(())
}

/// `U = ½ℂ_abij G_ij G_ab + 𝕄_abijh G_ab G_ij,h + ½𝔻_abcijh G_ij,h G_ab,c`.
pub fn energy_continuum(c: &Tensor, m: &Tensor, d: &Tensor, strain: &StrainState) -> Result<f64> {
    let n = strain.dim();
    expect_shape(c, "C", n, 4)?;
    expect_shape(m, "M", n, 5)?;
    expect_shape(d, "D", n, 6)?;
    let g = strain.g();
    let gg = strain.grad_g();

    let mut classical = 0.0;
    for (ix, v) in c.iter() {
        classical += v * g.get(&ix[2..4]) * g.get(&ix[0..2]);
    }
    let mut coupling = 0.0;
    for (ix, v) in m.iter() {
        coupling += v * g.get(&ix[0..2]) * gg.get(&ix[2..5]);
    }
    let mut gradient = 0.0;
    for (ix, v) in d.iter() {
        gradient += v * gg.get(&ix[3..6]) * gg.get(&ix[0..3]);
    }
    Ok(0.5 * classical + coupling + 0.5 * gradient)
}
