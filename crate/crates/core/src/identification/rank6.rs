//! Five-parameter isotropic representation of a 3D strain-gradient tensor.

use crate::error::{Error, Result};
use crate::tensor::{component_name, Tensor};

/// Isotropic gradient coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GradientCoefficients {
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
}

impl GradientCoefficients {
    pub fn as_array(&self) -> [f64; 5] {
        [self.c3, self.c4, self.c5, self.c6, self.c7]
    }
}

/// Mindlin second-gradient coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MindlinCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
}

impl MindlinCoefficients {
    pub fn as_array(&self) -> [f64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a5]
    }
}

#[inline]
fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Assembles `D_ijklmn` from Kronecker-delta blocks weighted by `c₃ … c₇`.
pub fn d_from_iso_params(c: &GradientCoefficients) -> Tensor {
    Tensor::from_fn(3, 6, |x| {
        let (i, j, k, l, m, n) = (x[0], x[1], x[2], x[3], x[4], x[5]);
        let d = delta;
        c.c3 * (d(i, j) * d(k, l) * d(m, n)
            + d(i, n) * d(j, k) * d(l, m)
            + d(i, j) * d(k, m) * d(l, n)
            + d(i, k) * d(j, n) * d(l, m))
            + c.c4 * d(i, j) * d(k, n) * d(m, l)
            + c.c5
                * (d(i, k) * d(j, l) * d(m, n)
                    + d(i, m) * d(j, k) * d(l, n)
                    + d(i, k) * d(j, m) * d(l, n)
                    + d(i, l) * d(j, k) * d(m, n))
            + c.c6 * (d(i, l) * d(j, m) * d(k, n) + d(i, m) * d(j, l) * d(k, n))
            + c.c7
                * (d(i, l) * d(j, n) * d(m, k)
                    + d(i, m) * d(j, n) * d(l, k)
                    + d(i, n) * d(j, l) * d(k, m)
                    + d(i, n) * d(j, m) * d(k, l))
    })
    .expect("3D rank-6 shape is always valid")
}

/// Extracts `c₃ … c₇` from the five probe components and checks that the
/// reconstruction matches `d` within `tol · max|d|`.
pub fn iso_params_from_d(d: &Tensor, tol: f64) -> Result<GradientCoefficients> {
    if d.dim() != 3 || d.rank() != 6 {
        return Err(Error::ShapeMismatch(format!(
            "expected a 3D rank-6 tensor, got dim {} rank {}",
            d.dim(),
            d.rank()
        )));
    }
    let p = |s: &str| d.get_named(s);
    let d111111 = p("111111")?;
    let d221221 = p("221221")?;
    let d111221 = p("111221")?;
    let d221122 = p("221122")?;
    let d112233 = p("112233")?;

    let c3 = d112233;
    let c = GradientCoefficients {
        c3,
        c4: d111221 - 2.0 * c3,
        c5: 0.25 * (d111111 - 2.0 * c3 - 2.0 * d221122 - d221221),
        c6: 0.5 * (-d111221 + 2.0 * c3 + d221221),
        c7: 0.5 * (-c3 + d221122),
    };

    let rebuilt = d_from_iso_params(&c);
    let bound = tol * d.max_abs();
    let worst = d
        .iter()
        .map(|(idx, v)| (idx.clone(), (v - rebuilt.get(&idx)).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    if let Some((idx, dev)) = worst {
        if dev > bound || !dev.is_finite() {
            return Err(Error::NotIsotropic {
                component: component_name("D", &idx),
                deviation: dev,
            });
        }
    }
    Ok(c)
}

/// `a₁ = 2c₃, a₂ = 2c₄, a₃ = 2c₅, a₄ = c₆, a₅ = 2c₇`.
pub fn mindlin_from_c(c: &GradientCoefficients) -> MindlinCoefficients {
    MindlinCoefficients {
        a1: 2.0 * c.c3,
        a2: 2.0 * c.c4,
        a3: 2.0 * c.c5,
        a4: c.c6,
        a5: 2.0 * c.c7,
    }
}
