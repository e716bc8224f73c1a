//! Orientation integrals defining `ℂ`, `𝕄` and `𝔻`.
//!
//! Each tensor entry is a linear combination of stiffness-weighted orientation
//! moments `∫ k(ĉ) ĉ_p ĉ_q … dS`. The kernels below list those combinations
//! term by term in the unsymmetrized, expanded form; the declared index
//! symmetries then hold as a consequence and are checked by tests.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kinematics::{validate_length, DisplacementMode};
use crate::quadrature::{
    build_rule, monomial_moment, OrientationDomain, QuadratureRule, DEFAULT_RULE_DEGREE,
};
use crate::tensor::Tensor;

use super::distribution::{StiffnessDistribution, StiffnessProfile};

/// How orientation moments are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationMethod {
    /// Product quadrature exact to the given polynomial degree.
    Quadrature { degree: u32 },
    /// Closed-form double-factorial moments; polynomial profiles only.
    ExactMoments,
}

impl Default for IntegrationMethod {
    fn default() -> Self {
        IntegrationMethod::Quadrature {
            degree: DEFAULT_RULE_DEGREE,
        }
    }
}

/// Options shared by the identification routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IdentifyOptions {
    pub method: IntegrationMethod,
    pub mode: DisplacementMode,
}

impl IdentifyOptions {
    pub fn with_method(mut self, method: IntegrationMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_mode(mut self, mode: DisplacementMode) -> Self {
        self.mode = mode;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Stiffness {
    Eta,
    Tau,
}

/// One kernel term: `coef · ∫ k_which Π ĉ_idx dS`.
struct Term {
    coef: f64,
    which: Stiffness,
    idx: Vec<usize>,
}

fn term(coef: f64, which: Stiffness, idx: &[usize]) -> Term {
    Term {
        coef,
        which,
        idx: idx.to_vec(),
    }
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Pushes `coef·δ_pq·∫k_τ Π ĉ_idx` when the delta is nonzero.
fn push_tau(terms: &mut Vec<Term>, coef: f64, p: usize, q: usize, idx: &[usize]) {
    if delta(p, q) != 0.0 {
        terms.push(term(coef, Stiffness::Tau, idx));
    }
}

fn normal_terms(idx: &[usize]) -> Vec<Term> {
    vec![
        term(1.0, Stiffness::Eta, idx),
        term(-4.0, Stiffness::Tau, idx),
    ]
}

/// Integrand of `ℂ_abij / L²`.
fn c_kernel(ix: &[usize]) -> Vec<Term> {
    let (a, b, i, j) = (ix[0], ix[1], ix[2], ix[3]);
    let mut t = normal_terms(&[i, j, a, b]);
    push_tau(&mut t, 1.0, i, a, &[b, j]);
    push_tau(&mut t, 1.0, j, a, &[b, i]);
    push_tau(&mut t, 1.0, i, b, &[a, j]);
    push_tau(&mut t, 1.0, j, b, &[a, i]);
    t
}

/// Integrand of `𝕄_abijh / (L³/4)`.
fn m_kernel(ix: &[usize], mode: DisplacementMode) -> Vec<Term> {
    let (a, b, i, j, h) = (ix[0], ix[1], ix[2], ix[3], ix[4]);
    let mut t = normal_terms(&[a, b, i, j, h]);
    match mode {
        DisplacementMode::Corrected => {
            push_tau(&mut t, 2.0, i, a, &[b, h, j]);
            push_tau(&mut t, 2.0, j, a, &[b, h, i]);
            push_tau(&mut t, -2.0, h, a, &[b, j, i]);
            push_tau(&mut t, 2.0, i, b, &[a, h, j]);
            push_tau(&mut t, 2.0, j, b, &[a, h, i]);
            push_tau(&mut t, -2.0, h, b, &[a, j, i]);
        }
        DisplacementMode::Legacy => {
            push_tau(&mut t, 1.0, i, a, &[b, j, h]);
            push_tau(&mut t, 1.0, j, a, &[b, i, h]);
            push_tau(&mut t, 1.0, i, b, &[a, j, h]);
            push_tau(&mut t, 1.0, j, b, &[a, i, h]);
        }
    }
    t
}

/// Integrand of `𝔻_abcijh / (L⁴/16)`.
fn d_kernel(ix: &[usize], mode: DisplacementMode) -> Vec<Term> {
    let (a, b, c, i, j, h) = (ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]);
    let mut t = normal_terms(&[i, j, h, a, b, c]);
    match mode {
        DisplacementMode::Corrected => {
            push_tau(&mut t, 4.0, i, a, &[c, b, h, j]);
            push_tau(&mut t, 4.0, j, a, &[c, b, h, i]);
            push_tau(&mut t, -4.0, h, a, &[c, b, j, i]);
            push_tau(&mut t, 4.0, i, b, &[c, a, h, j]);
            push_tau(&mut t, 4.0, j, b, &[c, a, h, i]);
            push_tau(&mut t, -4.0, h, b, &[c, a, j, i]);
            push_tau(&mut t, -4.0, i, c, &[b, a, h, j]);
            push_tau(&mut t, -4.0, j, c, &[b, a, h, i]);
            push_tau(&mut t, 4.0, h, c, &[b, a, j, i]);
        }
        DisplacementMode::Legacy => {
            push_tau(&mut t, 1.0, i, a, &[b, j, c, h]);
            push_tau(&mut t, 1.0, j, a, &[b, i, c, h]);
            push_tau(&mut t, 1.0, i, b, &[a, j, c, h]);
            push_tau(&mut t, 1.0, j, b, &[a, i, c, h]);
        }
    }
    t
}

/// Memoized stiffness-weighted orientation moments of one distribution.
pub(crate) struct MomentTable<'a> {
    dist: &'a StiffnessDistribution,
    domain: OrientationDomain,
    rule: Option<QuadratureRule>,
    cache: HashMap<(Stiffness, Vec<u32>), f64>,
}

impl<'a> MomentTable<'a> {
    pub(crate) fn new(dist: &'a StiffnessDistribution, method: IntegrationMethod) -> Result<Self> {
        let domain = OrientationDomain::from_dim(dist.dim())?;
        let rule = match method {
            IntegrationMethod::Quadrature { degree } => Some(build_rule(domain, degree)?),
            IntegrationMethod::ExactMoments => {
                for profile in [dist.eta_profile(), dist.tau_profile()] {
                    if profile.as_polynomial(dist.dim()).is_none() {
                        return Err(Error::Validation(
                            "exact moments require constant or polynomial stiffness profiles"
                                .into(),
                        ));
                    }
                }
                None
            }
        };
        Ok(MomentTable {
            dist,
            domain,
            rule,
            cache: HashMap::new(),
        })
    }

    fn profile(&self, which: Stiffness) -> &StiffnessProfile {
        match which {
            Stiffness::Eta => self.dist.eta_profile(),
            Stiffness::Tau => self.dist.tau_profile(),
        }
    }

    fn moment(&mut self, which: Stiffness, idx: &[usize]) -> Result<f64> {
        let mut exps = vec![0u32; self.domain.dim()];
        for &p in idx {
            exps[p] += 1;
        }
        if let Some(v) = self.cache.get(&(which, exps.clone())) {
            return Ok(*v);
        }
        let profile = self.profile(which);
        let value = match &self.rule {
            Some(rule) => rule.integrate(|c| {
                profile.eval(c)
                    * exps
                        .iter()
                        .zip(c)
                        .map(|(&e, &x)| x.powi(e as i32))
                        .product::<f64>()
            })?,
            None => {
                let poly = profile
                    .as_polynomial(self.domain.dim())
                    .expect("checked at construction");
                let mut sum = 0.0;
                for (pe, coef) in poly.terms() {
                    let total: Vec<u32> = pe.iter().zip(&exps).map(|(a, b)| a + b).collect();
                    sum += coef * monomial_moment(self.domain, &total)?;
                }
                sum
            }
        };
        self.cache.insert((which, exps), value);
        Ok(value)
    }

    fn assemble(
        &mut self,
        rank: usize,
        prefactor: f64,
        kernel: impl Fn(&[usize]) -> Vec<Term>,
    ) -> Result<Tensor> {
        let dim = self.domain.dim();
        let mut out = Tensor::zeros(dim, rank)?;
        for idx in out.indices().collect::<Vec<_>>() {
            let mut v = 0.0;
            for t in kernel(&idx) {
                v += t.coef * self.moment(t.which, &t.idx)?;
            }
            out.set(&idx, prefactor * v);
        }
        Ok(out)
    }
}

/// `ℂ_abij = L² ∫ [(k_η − 4k_τ) ĉ_iĉ_jĉ_aĉ_b + k_τ(δ_ia ĉ_bĉ_j + δ_ja ĉ_bĉ_i + δ_ib ĉ_aĉ_j + δ_jb ĉ_aĉ_i)] dS`.
///
/// Identical in corrected and legacy kinematics.
pub fn c_tensor_with(
    dist: &StiffnessDistribution,
    length: f64,
    options: &IdentifyOptions,
) -> Result<Tensor> {
    validate_length(length)?;
    MomentTable::new(dist, options.method)?.assemble(4, length * length, c_kernel)
}

/// `𝕄_abijh = (L³/4) ∫ [...] dS`, the strain/strain-gradient coupling.
pub fn m_tensor_with(
    dist: &StiffnessDistribution,
    length: f64,
    options: &IdentifyOptions,
) -> Result<Tensor> {
    validate_length(length)?;
    let mode = options.mode;
    MomentTable::new(dist, options.method)?
        .assemble(5, length.powi(3) / 4.0, |ix| m_kernel(ix, mode))
}

/// `𝔻_abcijh = (L⁴/16) ∫ [...] dS`, the strain-gradient stiffness.
pub fn d_tensor_with(
    dist: &StiffnessDistribution,
    length: f64,
    options: &IdentifyOptions,
) -> Result<Tensor> {
    validate_length(length)?;
    let mode = options.mode;
    MomentTable::new(dist, options.method)?
        .assemble(6, length.powi(4) / 16.0, |ix| d_kernel(ix, mode))
}

/// `ℂ` by default-degree quadrature.
pub fn c_tensor(dist: &StiffnessDistribution, length: f64) -> Result<Tensor> {
    c_tensor_with(dist, length, &IdentifyOptions::default())
}

/// `𝕄` by default-degree quadrature, corrected kinematics.
pub fn m_tensor(dist: &StiffnessDistribution, length: f64) -> Result<Tensor> {
    m_tensor_with(dist, length, &IdentifyOptions::default())
}

/// `𝔻` by default-degree quadrature, corrected kinematics.
pub fn d_tensor(dist: &StiffnessDistribution, length: f64) -> Result<Tensor> {
    d_tensor_with(dist, length, &IdentifyOptions::default())
}

/// The three stiffness tensors identified from one distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentifiedTensors {
    pub dim: usize,
    pub length: f64,
    pub mode: DisplacementMode,
    pub c: Tensor,
    pub m: Tensor,
    pub d: Tensor,
}

pub fn identify(
    dist: &StiffnessDistribution,
    length: f64,
    options: &IdentifyOptions,
) -> Result<IdentifiedTensors> {
    validate_length(length)?;
    let mut table = MomentTable::new(dist, options.method)?;
    let mode = options.mode;
    let c = table.assemble(4, length * length, c_kernel)?;
    let m = table.assemble(5, length.powi(3) / 4.0, |ix| m_kernel(ix, mode))?;
    let d = table.assemble(6, length.powi(4) / 16.0, |ix| d_kernel(ix, mode))?;
    Ok(IdentifiedTensors {
        dim: dist.dim(),
        length,
        mode,
        c,
        m,
        d,
    })
}
