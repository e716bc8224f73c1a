//! Sparse multivariate polynomials with exact differentiation.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

/// A polynomial in `nvars` variables stored as exponent vector → coefficient.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: f64) -> Self {
        Polynomial::zero(nvars).with_term(vec![0; nvars], value)
    }

    /// The coordinate `x_var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Polynomial::zero(nvars).with_term(exps, 1.0)
    }

    /// Adds `coeff · Π x_k^exps[k]` to the polynomial.
    pub fn with_term(mut self, exps: Vec<u32>, coeff: f64) -> Self {
        self.add_term(exps, coeff);
        self
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: f64) {
        assert_eq!(
            exps.len(),
            self.nvars,
            "exponent vector length must equal nvars"
        );
        let slot = self.terms.entry(exps).or_insert(0.0);
        *slot += coeff;
        if *slot == 0.0 {
            self.terms.retain(|_, c| *c != 0.0);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(exps, c)| {
                exps.iter()
                    .zip(x)
                    .fold(*c, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// Exact partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (exps, &c) in &self.terms {
            if exps[var] > 0 {
                let mut e = exps.clone();
                e[var] -= 1;
                out.add_term(e, c * exps[var] as f64);
            }
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_derivatives() {
        // p = 3 x² y - 2 z + 1
        let p = Polynomial::constant(3, 1.0)
            .with_term(vec![2, 1, 0], 3.0)
            .with_term(vec![0, 0, 1], -2.0);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(&[2.0, -1.0, 0.5]), -12.0);
        let px = p.partial(0);
        assert_eq!(px.eval(&[2.0, -1.0, 0.5]), -12.0);
        let pxy = px.partial(1);
        assert_eq!(pxy.eval(&[1.5, 7.0, 0.0]), 9.0);
        assert!(p.partial(2).partial(2).is_zero());
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.degree(), 2);
        assert!((sq.eval(&[0.3, 0.4]) - 0.49).abs() < 1e-15);
        let cancel = &x + &x.scaled(-1.0);
        assert!(cancel.is_zero());
    }
}
