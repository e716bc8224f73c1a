//! Integration over orientation space (the unit circle S¹ or the unit sphere S²).
//!
//! Two independent routes are provided: closed-form monomial moments built
//! from double factorials, and tensor-product quadrature rules that are exact
//! for polynomial integrands up to a guaranteed degree.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Highest total degree accepted by [`monomial_moment`].
pub const MAX_MOMENT_DEGREE: u32 = 8;

/// Polynomial exactness of the rules used throughout the library.
pub const DEFAULT_RULE_DEGREE: u32 = 10;

/// The set of unit orientations in two or three dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrientationDomain {
    /// S¹, total measure 2π.
    Circle,
    /// S², total measure 4π.
    Sphere,
}

impl OrientationDomain {
    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(OrientationDomain::Circle),
            3 => Ok(OrientationDomain::Sphere),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            OrientationDomain::Circle => 2,
            OrientationDomain::Sphere => 3,
        }
    }

    pub fn measure(self) -> f64 {
        match self {
            OrientationDomain::Circle => 2.0 * PI,
            OrientationDomain::Sphere => 4.0 * PI,
        }
    }
}

fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// Exact `∫ Π ĉ_k^{e_k} dS` over the domain.
///
/// Zero when any exponent is odd; otherwise `2π Π(e_k−1)!! / (Σe)!!` on S¹
/// and `4π Π(e_k−1)!! / (Σe+1)!!` on S².
pub fn monomial_moment(domain: OrientationDomain, exponents: &[u32]) -> Result<f64> {
    if exponents.len() != domain.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{} exponents given for a {}D orientation",
            exponents.len(),
            domain.dim()
        )));
    }
    let total: u32 = exponents.iter().sum();
    if total > MAX_MOMENT_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: total,
            cap: MAX_MOMENT_DEGREE,
        });
    }
    if exponents.iter().any(|e| e % 2 == 1) {
        return Ok(0.0);
    }
    let numerator: f64 = exponents
        .iter()
        .map(|&e| double_factorial(e as i64 - 1))
        .product();
    let denominator = match domain {
        OrientationDomain::Circle => double_factorial(total as i64),
        OrientationDomain::Sphere => double_factorial(total as i64 + 1),
    };
    Ok(domain.measure() * numerator / denominator)
}

/// Nodes and positive weights on S¹ or S².
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    domain: OrientationDomain,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
    exact_degree: u32,
}

impl QuadratureRule {
    /// The rule of degree [`DEFAULT_RULE_DEGREE`] for a dimension.
    pub fn default_for_dim(dim: usize) -> Result<Self> {
        build_rule(OrientationDomain::from_dim(dim)?, DEFAULT_RULE_DEGREE)
    }

    pub fn domain(&self) -> OrientationDomain {
        self.domain
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Total degree up to which polynomial integrands are integrated exactly.
    pub fn exact_degree(&self) -> u32 {
        self.exact_degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        integrate(self, f)
    }
}

/// Builds a rule exact for polynomials of total degree ≤ `target_degree`.
///
/// S¹ uses `N ≥ target_degree + 1` equally spaced angles (rounded up to even,
/// so nodes come in antipodal pairs). S² is a product of Gauss–Legendre in
/// `cos θ` with `⌈(target_degree+1)/2⌉` points and the same uniform rule in `φ`.
pub fn build_rule(domain: OrientationDomain, target_degree: u32) -> Result<QuadratureRule> {
    if target_degree < 1 {
        return Err(Error::Validation(
            "quadrature target degree must be at least 1".into(),
        ));
    }
    let n_phi = {
        let n = target_degree as usize + 1;
        n + n % 2
    };
    let phis: Vec<f64> = (0..n_phi)
        .map(|k| 2.0 * PI * k as f64 / n_phi as f64)
        .collect();
    let (nodes, weights) = match domain {
        OrientationDomain::Circle => {
            let w = 2.0 * PI / n_phi as f64;
            (
                phis.iter().map(|p| vec![p.cos(), p.sin()]).collect(),
                vec![w; n_phi],
            )
        }
        OrientationDomain::Sphere => {
            let n_theta = (target_degree as usize + 2) / 2;
            let (zs, wz) = gauss_legendre(n_theta);
            let w_phi = 2.0 * PI / n_phi as f64;
            let mut nodes = Vec::with_capacity(n_theta * n_phi);
            let mut weights = Vec::with_capacity(n_theta * n_phi);
            for (z, w) in zs.iter().zip(&wz) {
                let s = (1.0 - z * z).sqrt();
                for p in &phis {
                    nodes.push(vec![s * p.cos(), s * p.sin(), *z]);
                    weights.push(w * w_phi);
                }
            }
            (nodes, weights)
        }
    };
    Ok(QuadratureRule {
        domain,
        nodes,
        weights,
        exact_degree: target_degree,
    })
}

/// `Σ w_k f(ĉ_k)`; fails on the first node where `f` is not finite.
pub fn integrate(rule: &QuadratureRule, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
    let mut sum = 0.0;
    for (k, (node, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let v = f(node);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { node: k });
        }
        sum += w * v;
    }
    Ok(sum)
}

/// Gauss–Legendre nodes and weights on [−1, 1].
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[k] = -x;
        xs[n - 1 - k] = x;
        ws[k] = w;
        ws[n - 1 - k] = w;
    }
    (xs, ws)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_moments() {
        let circle = OrientationDomain::Circle;
        let sphere = OrientationDomain::Sphere;
        assert!((monomial_moment(circle, &[2, 0]).unwrap() - PI).abs() < 1e-15);
        assert!((monomial_moment(sphere, &[2, 0, 0]).unwrap() - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((monomial_moment(circle, &[4, 2]).unwrap() - PI / 8.0).abs() < 1e-15);
        assert!((monomial_moment(sphere, &[6, 0, 0]).unwrap() - 4.0 * PI / 7.0).abs() < 1e-15);
        assert_eq!(monomial_moment(sphere, &[3, 1, 0]).unwrap(), 0.0);
        assert_eq!(monomial_moment(circle, &[0, 0]).unwrap(), 2.0 * PI);
    }

    #[test]
    fn moment_errors() {
        assert_eq!(
            monomial_moment(OrientationDomain::Circle, &[6, 4]),
            Err(Error::UnsupportedDegree { degree: 10, cap: 8 })
        );
        assert!(matches!(
            monomial_moment(OrientationDomain::Sphere, &[2, 2]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(OrientationDomain::from_dim(4).is_err());
    }

    #[test]
    fn gauss_legendre_small_cases() {
        let (x, w) = gauss_legendre(1);
        assert_eq!(x, vec![0.0]);
        assert!((w[0] - 2.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(2);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(5);
        // ∫ x⁸ dx = 2/9 on [−1, 1]
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn rule_shapes() {
        let r = build_rule(OrientationDomain::Circle, 8).unwrap();
        assert!(r.len() >= 9);
        assert_eq!(r.len() % 2, 0);
        assert!((r.weights().iter().sum::<f64>() - 2.0 * PI).abs() < 1e-12);

        let r = build_rule(OrientationDomain::Sphere, 10).unwrap();
        assert_eq!(r.len(), 6 * 12);
        assert!((r.weights().iter().sum::<f64>() - 4.0 * PI).abs() < 1e-12);
        for n in r.nodes() {
            assert!((n.iter().map(|c| c * c).sum::<f64>().sqrt() - 1.0).abs() < 1e-14);
        }
        assert!(r.weights().iter().all(|w| *w > 0.0));
        assert!(build_rule(OrientationDomain::Sphere, 0).is_err());
    }

    #[test]
    fn circle_nodes_are_antipodal() {
        let r = build_rule(OrientationDomain::Circle, DEFAULT_RULE_DEGREE).unwrap();
        let n = r.len();
        for k in 0..n / 2 {
            let (a, b) = (&r.nodes()[k], &r.nodes()[k + n / 2]);
            assert!((a[0] + b[0]).abs() < 1e-15 && (a[1] + b[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn integrate_examples() {
        let sphere = QuadratureRule::default_for_dim(3).unwrap();
        let circle = QuadratureRule::default_for_dim(2).unwrap();
        assert!((sphere.integrate(|_| 1.0).unwrap() - 4.0 * PI).abs() < 1e-13);
        assert!(circle.integrate(|c| c[0] * c[1]).unwrap().abs() < 1e-15);
        assert!((sphere.integrate(|c| c[0].powi(4)).unwrap() - 4.0 * PI / 5.0).abs() < 1e-14);
        let r = build_rule(OrientationDomain::Circle, 8).unwrap();
        assert!((r.integrate(|c| c[0].powi(4) * c[1].powi(2)).unwrap() - PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_reports_bad_node() {
        let r = QuadratureRule::default_for_dim(2).unwrap();
        let err = r.integrate(|c| if c[1] < -0.5 { f64::NAN } else { 1.0 });
        assert!(matches!(err, Err(Error::NonFiniteIntegrand { .. })));
    }
}
