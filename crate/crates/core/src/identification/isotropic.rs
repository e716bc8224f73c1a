//! Closed-form identification for isotropic grain-pair stiffness.
//!
//! Every group is stored as printed in the source tables: a numerator pair
//! multiplying `(k̄_η, k̄_τ)`, a denominator, and the component index strings.
//! Where the printed notation is ambiguous the line also carries the factor
//! determined by orientation quadrature; see [`ComponentLine::factor`].

use crate::error::{Error, Result};
use crate::kinematics::validate_length;
use crate::tensor::{parse_digits, Tensor};

/// `Lᵖ (eta·k̄_η + tau·k̄_τ) / denominator`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupFormula {
    pub eta: f64,
    pub tau: f64,
    pub denominator: f64,
}

impl GroupFormula {
    const fn new(eta: f64, tau: f64, denominator: f64) -> Self {
        GroupFormula {
            eta,
            tau,
            denominator,
        }
    }

    /// Value for the given length power `Lᵖ` and integrated stiffnesses.
    pub fn value(&self, length_power: f64, kbar_eta: f64, kbar_tau: f64) -> f64 {
        length_power * (self.eta * kbar_eta + self.tau * kbar_tau) / self.denominator
    }
}

/// A printed line of components sharing one value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentLine {
    /// Label as printed in front of the line, e.g. `"d5"` or `"3d5"`.
    pub printed_label: &'static str,
    /// Component value divided by the group value, as fixed by quadrature.
    pub factor: f64,
    /// 1-based index digits as printed.
    pub components: &'static [&'static str],
}

/// A named group of equal-valued components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentGroup {
    pub name: &'static str,
    pub formula: GroupFormula,
    pub lines: &'static [ComponentLine],
}

impl ComponentGroup {
    /// `(resolved digits, factor)` for every component of the group.
    pub fn components(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.lines.iter().flat_map(|l| {
            l.components
                .iter()
                .map(move |c| (resolve_erratum(c), l.factor))
        })
    }

    pub fn value(&self, length: f64, kbar_eta: f64, kbar_tau: f64, length_exponent: i32) -> f64 {
        self.formula
            .value(length.powi(length_exponent), kbar_eta, kbar_tau)
    }
}

const fn line(printed_label: &'static str, components: &'static [&'static str]) -> ComponentLine {
    ComponentLine {
        printed_label,
        factor: 1.0,
        components,
    }
}

/// Printed component names that quadrature shows to be misprints, with the
/// component they stand for.
pub const APPENDIX_ERRATA: &[(&str, &str)] = &[("212222", "212111")];

fn resolve_erratum(printed: &'static str) -> &'static str {
    APPENDIX_ERRATA
        .iter()
        .find(|(p, _)| *p == printed)
        .map(|(_, r)| *r)
        .unwrap_or(printed)
}

// ---------------------------------------------------------------- 2D ----

pub const C_GROUPS_2D: &[ComponentGroup] = &[
    ComponentGroup {
        name: "C1111",
        formula: GroupFormula::new(3.0, 4.0, 8.0),
        lines: &[line("C1111", &["1111", "2222"])],
    },
    ComponentGroup {
        name: "C1122",
        formula: GroupFormula::new(1.0, -4.0, 8.0),
        lines: &[line("C1122", &["1122", "2211"])],
    },
    ComponentGroup {
        name: "C1212",
        formula: GroupFormula::new(1.0, 4.0, 8.0),
        lines: &[line("C1212", &["1212", "1221", "2112", "2121"])],
    },
];

pub const D_GROUPS_2D: &[ComponentGroup] = &[
    ComponentGroup {
        name: "d1_2d",
        formula: GroupFormula::new(5.0, 4.0, 256.0),
        lines: &[line("d1", &["111111", "222222"])],
    },
    ComponentGroup {
        name: "d2_2d",
        formula: GroupFormula::new(1.0, 4.0, 256.0),
        lines: &[
            line("d2", &["111122", "111212", "121222", "122111"]),
            line("d2", &["211222", "212111", "222121", "222211"]),
        ],
    },
    ComponentGroup {
        name: "d3_2d",
        formula: GroupFormula::new(1.0, -12.0, 256.0),
        lines: &[line("d3", &["111221", "112222", "221111", "222112"])],
    },
    ComponentGroup {
        name: "d4_2d",
        formula: GroupFormula::new(1.0, 52.0, 256.0),
        lines: &[line("d4", &["112112", "221221"])],
    },
    ComponentGroup {
        name: "d5_2d",
        formula: GroupFormula::new(1.0, -28.0, 256.0),
        lines: &[
            line("d5", &["112121", "112211", "121112", "122221"]),
            line("d5", &["211112", "212221", "221122", "221212"]),
        ],
    },
    ComponentGroup {
        name: "d6_2d",
        formula: GroupFormula::new(1.0, 20.0, 256.0),
        lines: &[
            line("d6", &["121121", "121211", "122122", "122212"]),
            line("d6", &["211121", "211211", "212122", "212212"]),
        ],
    },
];

// ---------------------------------------------------------------- 3D ----

pub const C_GROUPS_3D: &[ComponentGroup] = &[
    ComponentGroup {
        name: "C1111",
        formula: GroupFormula::new(3.0, 8.0, 15.0),
        lines: &[line("C1111", &["1111", "2222", "3333"])],
    },
    ComponentGroup {
        name: "C1122",
        formula: GroupFormula::new(1.0, -4.0, 15.0),
        lines: &[line(
            "C1122",
            &["1122", "1133", "2211", "2233", "3311", "3322"],
        )],
    },
    ComponentGroup {
        name: "C1212",
        formula: GroupFormula::new(1.0, 6.0, 15.0),
        lines: &[
            line("C1212", &["1212", "1221", "1313", "1331", "2112", "2121"]),
            line("C1212", &["2323", "2332", "3113", "3131", "3223", "3232"]),
        ],
    },
];

/// The five probe components that fix an isotropic rank-6 tensor.
pub const D_PROBES_3D: &[(&str, GroupFormula)] = &[
    ("111111", GroupFormula::new(5.0, 8.0, 560.0)),
    ("221221", GroupFormula::new(3.0, 184.0, 1680.0)),
    ("111221", GroupFormula::new(3.0, -40.0, 1680.0)),
    ("221122", GroupFormula::new(1.0, -32.0, 560.0)),
    ("112233", GroupFormula::new(1.0, -32.0, 1680.0)),
];

/// Printed closed forms of the isotropic gradient coefficients `c₃ … c₇`.
pub const GRADIENT_COEFFICIENTS_3D: [(&str, GroupFormula); 5] = [
    ("c3", GroupFormula::new(1.0, -32.0, 1680.0)),
    ("c4", GroupFormula::new(1.0, 24.0, 1680.0)),
    ("c5", GroupFormula::new(1.0, 24.0, 1680.0)),
    ("c6", GroupFormula::new(1.0, 80.0, 1680.0)),
    ("c7", GroupFormula::new(1.0, -32.0, 1680.0)),
];

/// Factor of the lines printed as `3d₅`: the listed components equal `d₅/3`.
pub const THREE_D5_FACTOR: f64 = 1.0 / 3.0;
/// Factor of the lines printed as `3d₆`: the listed components equal `3·d₆`.
pub const THREE_D6_FACTOR: f64 = 3.0;

const fn scaled_line(
    printed_label: &'static str,
    factor: f64,
    components: &'static [&'static str],
) -> ComponentLine {
    ComponentLine {
        printed_label,
        factor,
        components,
    }
}

/// The complete 3D strain-gradient table in seven groups.
pub const D_GROUPS_3D: &[ComponentGroup] = &[
    ComponentGroup {
        name: "d1_3d",
        formula: GroupFormula::new(5.0, 8.0, 560.0),
        lines: &[line("d1", &["111111", "222222", "333333"])],
    },
    ComponentGroup {
        name: "d2_3d",
        formula: GroupFormula::new(3.0, 16.0, 1680.0),
        lines: &[
            line(
                "d2",
                &[
                    "111122", "111133", "111212", "111313", "121222", "122111", "131333", "133111",
                ],
            ),
            line(
                "d2",
                &[
                    "211222", "212222", "222121", "222211", "222233", "222323", "232333", "233222",
                ],
            ),
            line(
                "d2",
                &[
                    "311333", "313111", "322333", "323222", "333131", "333232", "333311", "333322",
                ],
            ),
        ],
    },
    ComponentGroup {
        name: "d3_3d",
        formula: GroupFormula::new(3.0, -40.0, 1680.0),
        lines: &[
            line("d3", &["111221", "111331", "112222", "113333"]),
            line("d3", &["221111", "222112", "222332", "223333"]),
            line("d3", &["331111", "332222", "333113", "333223"]),
        ],
    },
    ComponentGroup {
        name: "d4_3d",
        formula: GroupFormula::new(3.0, 184.0, 1680.0),
        lines: &[line(
            "d4",
            &["112112", "113113", "221221", "223223", "331331", "332332"],
        )],
    },
    ComponentGroup {
        name: "d5_3d",
        formula: GroupFormula::new(1.0, -32.0, 560.0),
        lines: &[
            line(
                "d5",
                &[
                    "112121", "112211", "113131", "113311", "121112", "122221", "131113", "133331",
                ],
            ),
            line(
                "d5",
                &[
                    "211112", "212221", "221122", "221212", "223232", "223322", "232223", "233332",
                ],
            ),
            line(
                "d5",
                &[
                    "311113", "313331", "322223", "323332", "331133", "331313", "332233", "332323",
                ],
            ),
            scaled_line(
                "3d5",
                THREE_D5_FACTOR,
                &[
                    "112233", "112323", "113232", "113322", "121332", "122331", "123132", "123231",
                ],
            ),
            scaled_line(
                "3d5",
                THREE_D5_FACTOR,
                &[
                    "123312", "123321", "131223", "132123", "132213", "132231", "132321", "133221",
                ],
            ),
            scaled_line(
                "3d5",
                THREE_D5_FACTOR,
                &[
                    "211332", "212331", "213132", "213231", "213312", "213321", "221133", "221313",
                ],
            ),
            scaled_line(
                "3d5",
                THREE_D5_FACTOR,
                &[
                    "223131", "223311", "231123", "231132", "231213", "231312", "232113", "233112",
                ],
            ),
            scaled_line(
                "3d5",
                THREE_D5_FACTOR,
                &[
                    "311223", "312123", "312213", "312231", "312321", "313221", "321123", "321132",
                ],
            ),
            scaled_line(
                "3d5",
                THREE_D5_FACTOR,
                &[
                    "321213", "321312", "322113", "323112", "331122", "331212", "332121", "332211",
                ],
            ),
        ],
    },
    ComponentGroup {
        name: "d6_3d",
        formula: GroupFormula::new(1.0, 24.0, 1680.0),
        lines: &[
            line("d6", &["112332", "113223", "121233", "121323", "122133"]),
            line("d6", &["122313", "131232", "131322", "133122", "133212"]),
            line("d6", &["211233", "211323", "212133", "212313", "221331"]),
            line("d6", &["223113", "232131", "232311", "233121", "233211"]),
            line("d6", &["311232", "311322", "313122", "313212", "322131"]),
            line("d6", &["322311", "323121", "323211", "331221", "332112"]),
            scaled_line(
                "3d6",
                THREE_D6_FACTOR,
                &[
                    "121121", "121211", "122122", "122212", "131131", "131311", "133133", "133313",
                ],
            ),
            scaled_line(
                "3d6",
                THREE_D6_FACTOR,
                &[
                    "211121", "211211", "212122", "212212", "232232", "232322", "233233", "233323",
                ],
            ),
            scaled_line(
                "3d6",
                THREE_D6_FACTOR,
                &[
                    "311131", "311311", "313133", "313313", "322232", "322322", "323233", "323323",
                ],
            ),
        ],
    },
    ComponentGroup {
        name: "d7_3d",
        formula: GroupFormula::new(1.0, 80.0, 1680.0),
        lines: &[
            line("d7", &["123123", "123213", "132132", "132312"]),
            line("d7", &["213123", "213213", "231231", "231321"]),
            line("d7", &["312132", "312312", "321231", "321321"]),
        ],
    },
];

/// The printed 3D shear-modulus line carries `L²/8`; the `ℂ_1212` group and
/// quadrature both give `L²/15`, which is what this library uses.
pub const MU_PREFACTOR_NOTE: &str = "3D shear modulus: the printed line 'mu = C_1212 = L^2/8 (kbar_eta + 6 kbar_tau)' conflicts with the C_1212 group formula L^2/15 (kbar_eta + 6 kbar_tau); quadrature confirms L^2/15, so the /8 prefactor is treated as a typo";

/// Note on the `3d₅` / `3d₆` notation of the 3D table.
pub const THREE_D_NOTATION_NOTE: &str = "3D table: lines printed as '3d5 = D_...' resolve by quadrature to D = d5/3, lines printed as '3d6 = D_...' resolve to D = 3*d6";

/// Note on the misprinted component of the 3D d2 group.
pub const ERRATUM_NOTE: &str = "3D table: component printed as D_212222 in group d2 is identically zero by quadrature; the group member is D_212111";

pub fn c_groups(dim: usize) -> Result<&'static [ComponentGroup]> {
    match dim {
        2 => Ok(C_GROUPS_2D),
        3 => Ok(C_GROUPS_3D),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

pub fn d_groups(dim: usize) -> Result<&'static [ComponentGroup]> {
    match dim {
        2 => Ok(D_GROUPS_2D),
        3 => Ok(D_GROUPS_3D),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Tensors and named group values filled from the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicClosedForms {
    pub dim: usize,
    pub length: f64,
    pub kbar_eta: f64,
    pub kbar_tau: f64,
    pub c: Tensor,
    pub m: Tensor,
    pub d: Tensor,
    /// `(group name, value)` for the `ℂ` groups.
    pub c_groups: Vec<(String, f64)>,
    /// `(group name, value)` for the `𝔻` groups (`d1_2d` … or `d1_3d` …).
    pub d_groups: Vec<(String, f64)>,
}

fn fill(
    t: &mut Tensor,
    groups: &[ComponentGroup],
    length: f64,
    exponent: i32,
    kbar_eta: f64,
    kbar_tau: f64,
) -> Result<Vec<(String, f64)>> {
    let mut values = Vec::with_capacity(groups.len());
    for g in groups {
        let v = g.value(length, kbar_eta, kbar_tau, exponent);
        for (digits, factor) in g.components() {
            let idx = parse_digits(digits, t.dim())?;
            t.set(&idx, factor * v);
        }
        values.push((g.name.to_string(), v));
    }
    Ok(values)
}

/// Fills every nonzero component of `ℂ` and `𝔻` from the published groups;
/// `𝕄` and all unlisted components are zero.
pub fn isotropic_closed_forms(
    dim: usize,
    length: f64,
    kbar_eta: f64,
    kbar_tau: f64,
) -> Result<IsotropicClosedForms> {
    validate_length(length)?;
    let mut c = Tensor::zeros(dim, 4)?;
    let mut d = Tensor::zeros(dim, 6)?;
    let c_vals = fill(&mut c, c_groups(dim)?, length, 2, kbar_eta, kbar_tau)?;
    let d_vals = fill(&mut d, d_groups(dim)?, length, 4, kbar_eta, kbar_tau)?;
    Ok(IsotropicClosedForms {
        dim,
        length,
        kbar_eta,
        kbar_tau,
        c,
        m: Tensor::zeros(dim, 5)?,
        d,
        c_groups: c_vals,
        d_groups: d_vals,
    })
}

/// Lamé parameters `(λ, μ)` with `λ = ℂ_1122` and `μ = ½(ℂ_1111 − ℂ_1122)`.
pub fn lame_from_k(dim: usize, length: f64, kbar_eta: f64, kbar_tau: f64) -> Result<(f64, f64)> {
    validate_length(length)?;
    let groups = c_groups(dim)?;
    let l2 = length * length;
    let c1111 = groups[0].formula.value(l2, kbar_eta, kbar_tau);
    let c1122 = groups[1].formula.value(l2, kbar_eta, kbar_tau);
    Ok((c1122, 0.5 * (c1111 - c1122)))
}

/// Young's modulus and Poisson ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Engineering {
    pub young: f64,
    pub poisson: f64,
}

/// `(Y, ν)` from integrated stiffnesses.
///
/// 2D: `Y = L²k̄_η(k̄_η+4k̄_τ)/(3k̄_η+4k̄_τ)`, `ν = (k̄_η−4k̄_τ)/(3k̄_η+4k̄_τ)`.
/// 3D: `Y = L²k̄_η(k̄_η+6k̄_τ)/(6(k̄_η+k̄_τ))`, `ν = (k̄_η−4k̄_τ)/(4(k̄_η+k̄_τ))`.
pub fn engineering_from_k(
    dim: usize,
    length: f64,
    kbar_eta: f64,
    kbar_tau: f64,
) -> Result<Engineering> {
    validate_length(length)?;
    let l2 = length * length;
    match dim {
        2 => {
            let den = 3.0 * kbar_eta + 4.0 * kbar_tau;
            if den <= 0.0 || !den.is_finite() {
                return Err(Error::Validation(format!(
                    "3 kbar_eta + 4 kbar_tau must be positive, got {den}"
                )));
            }
            Ok(Engineering {
                young: l2 * kbar_eta * (kbar_eta + 4.0 * kbar_tau) / den,
                poisson: (kbar_eta - 4.0 * kbar_tau) / den,
            })
        }
        3 => {
            let sum = kbar_eta + kbar_tau;
            if sum <= 0.0 || !sum.is_finite() {
                return Err(Error::Validation(format!(
                    "kbar_eta + kbar_tau must be positive, got {sum}"
                )));
            }
            Ok(Engineering {
                young: l2 * kbar_eta * (kbar_eta + 6.0 * kbar_tau) / (6.0 * sum),
                poisson: (kbar_eta - 4.0 * kbar_tau) / (4.0 * sum),
            })
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Integrated stiffnesses recovered from `(Y, ν)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratedStiffness {
    pub kbar_eta: f64,
    pub kbar_tau: f64,
    /// Physical-admissibility notes (negative stiffness); never fatal.
    pub warnings: Vec<String>,
}

/// Inverse of [`engineering_from_k`].
///
/// 2D: `k̄_η = −2Y/(L²(ν−1))`, `k̄_τ = (3ν−1)Y/(2L²(ν²−1))`.
/// 3D: `k̄_η = 3Y/(L²(1−2ν))`, `k̄_τ = 3(4ν−1)Y/(4L²(2ν²+ν−1))`.
pub fn k_from_engineering(
    dim: usize,
    length: f64,
    young: f64,
    poisson: f64,
) -> Result<IntegratedStiffness> {
    validate_length(length)?;
    if !(young.is_finite() && young > 0.0) {
        return Err(Error::Validation(format!(
            "Young's modulus must be positive, got {young}"
        )));
    }
    if !poisson.is_finite() {
        return Err(Error::NonFinite(format!("Poisson ratio {poisson}")));
    }
    let l2 = length * length;
    let nu = poisson;
    let (kbar_eta, kbar_tau) = match dim {
        2 => {
            if nu == 1.0 || nu == -1.0 {
                return Err(Error::Validation(format!(
                    "2D Poisson ratio must differ from ±1, got {nu}"
                )));
            }
            (
                -2.0 * young / (l2 * (nu - 1.0)),
                (3.0 * nu - 1.0) * young / (2.0 * l2 * (nu * nu - 1.0)),
            )
        }
        3 => {
            if nu == 0.5 || nu == -1.0 {
                return Err(Error::Validation(format!(
                    "3D Poisson ratio must differ from 1/2 and −1, got {nu}"
                )));
            }
            (
                3.0 * young / (l2 * (1.0 - 2.0 * nu)),
                (4.0 * nu - 1.0) * 3.0 * young / (4.0 * l2 * (2.0 * nu * nu + nu - 1.0)),
            )
        }
        d => return Err(Error::UnsupportedDimension(d)),
    };
    let mut warnings = Vec::new();
    if kbar_eta < 0.0 {
        warnings.push(format!(
            "kbar_eta = {kbar_eta:e} is negative (physically inadmissible)"
        ));
    }
    if kbar_tau < 0.0 {
        warnings.push(format!(
            "kbar_tau = {kbar_tau:e} is negative (physically inadmissible)"
        ));
    }
    Ok(IntegratedStiffness {
        kbar_eta,
        kbar_tau,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn group_counts() {
        let count =
            |gs: &[ComponentGroup]| gs.iter().map(|g| g.components().count()).sum::<usize>();
        assert_eq!(count(D_GROUPS_2D), 32);
        assert_eq!(count(D_GROUPS_3D), 183);
        assert_eq!(count(C_GROUPS_2D), 8);
        assert_eq!(count(C_GROUPS_3D), 21);
    }

    #[test]
    fn table_has_no_duplicate_components() {
        for groups in [D_GROUPS_2D, D_GROUPS_3D] {
            let mut all: Vec<&str> = groups
                .iter()
                .flat_map(|g| g.components().map(|c| c.0))
                .collect();
            let n = all.len();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), n);
        }
    }

    #[test]
    fn erratum_is_applied() {
        let d2 = &D_GROUPS_3D[1];
        let comps: Vec<&str> = d2.components().map(|c| c.0).collect();
        assert!(comps.contains(&"212111"));
        assert!(!comps.contains(&"212222"));
        // Printed text is kept verbatim.
        assert!(d2.lines[1].components.contains(&"212222"));
    }

    #[test]
    fn two_d_groups_at_zero_tau() {
        let cf = isotropic_closed_forms(2, 1.0, 256.0, 0.0).unwrap();
        let values: Vec<f64> = cf.d_groups.iter().map(|g| g.1).collect();
        assert_eq!(values, vec![5.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        assert_eq!(cf.m.max_abs(), 0.0);
    }

    #[test]
    fn three_d_groups_at_zero_tau() {
        let cf = isotropic_closed_forms(3, 1.0, 1680.0, 0.0).unwrap();
        let get = |n: &str| cf.d_groups.iter().find(|g| g.0 == n).unwrap().1;
        assert_eq!(get("d2_3d"), 3.0);
        assert_eq!(get("d3_3d"), 3.0);
        assert_eq!(get("d4_3d"), 3.0);
        assert_eq!(get("d5_3d"), 3.0);
        assert_eq!(get("d6_3d"), 1.0);
        assert_eq!(get("d7_3d"), 1.0);
        assert!(close(cf.d.get_named("112233").unwrap(), 1.0));
        assert!(close(cf.d.get_named("121121").unwrap(), 3.0));
    }

    #[test]
    fn zero_stiffness_gives_zero_groups() {
        for dim in [2, 3] {
            let cf = isotropic_closed_forms(dim, 2.0, 0.0, 0.0).unwrap();
            assert!(cf.d_groups.iter().all(|g| g.1 == 0.0));
            assert_eq!(cf.c.max_abs(), 0.0);
        }
    }

    #[test]
    fn lame_examples() {
        assert_eq!(lame_from_k(2, 1.0, 8.0, 0.0).unwrap(), (1.0, 1.0));
        assert_eq!(lame_from_k(2, 1.0, 4.0, 1.0).unwrap().0, 0.0);
        let (l, m) = lame_from_k(3, 1.0, 15.0, 0.0).unwrap();
        assert!(close(l, 1.0) && close(m, 1.0));
        // μ equals the C_1212 group value (L²/15 prefactor).
        let (_, m) = lame_from_k(3, 2.0, 3.0, 1.5).unwrap();
        assert!(close(m, 4.0 / 15.0 * (3.0 + 9.0)));
    }

    #[test]
    fn engineering_examples() {
        assert!(close(
            engineering_from_k(2, 1.0, 5.0, 0.0).unwrap().poisson,
            1.0 / 3.0
        ));
        assert!(close(
            engineering_from_k(3, 1.0, 5.0, 0.0).unwrap().poisson,
            0.25
        ));
        let e = engineering_from_k(2, 1.5, 4.0, 1.0).unwrap();
        assert_eq!(e.poisson, 0.0);
        assert!(close(e.young, 1.5 * 1.5 * 4.0 / 2.0));
        assert!(engineering_from_k(2, 1.0, 0.0, 0.0).is_err());
        assert!(engineering_from_k(3, 1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn lame_forms_of_young_agree() {
        let (ke, kt, l) = (3.0, 0.4, 1.3);
        let (lam, mu) = lame_from_k(2, l, ke, kt).unwrap();
        let e = engineering_from_k(2, l, ke, kt).unwrap();
        assert!(close(e.young, 4.0 * mu * (lam + mu) / (lam + 2.0 * mu)));
        assert!(close(e.poisson, lam / (lam + 2.0 * mu)));
        let (lam, mu) = lame_from_k(3, l, ke, kt).unwrap();
        let e = engineering_from_k(3, l, ke, kt).unwrap();
        assert!(close(e.young, mu * (3.0 * lam + 2.0 * mu) / (lam + mu)));
        assert!(close(e.poisson, lam / (2.0 * (lam + mu))));
    }

    #[test]
    fn inverse_examples() {
        let k = k_from_engineering(2, 1.0, 1.0, 1.0 / 3.0).unwrap();
        assert!(close(k.kbar_eta, 3.0) && k.kbar_tau.abs() < 1e-15);
        let k = k_from_engineering(3, 1.0, 1.0, 0.25).unwrap();
        assert!(close(k.kbar_eta, 6.0) && k.kbar_tau.abs() < 1e-15);
        assert!(k.warnings.is_empty());
    }

    #[test]
    fn inverse_rejections_and_warnings() {
        assert!(k_from_engineering(2, 1.0, 1.0, 1.0).is_err());
        assert!(k_from_engineering(2, 1.0, 1.0, -1.0).is_err());
        assert!(k_from_engineering(3, 1.0, 1.0, 0.5).is_err());
        assert!(k_from_engineering(3, 1.0, 1.0, -1.0).is_err());
        assert!(k_from_engineering(3, 1.0, -1.0, 0.2).is_err());
        assert!(k_from_engineering(3, 0.0, 1.0, 0.2).is_err());
        // ν_2D > 1/3 needs negative tangential stiffness.
        let k = k_from_engineering(2, 1.0, 1.0, 0.45).unwrap();
        assert!(k.kbar_tau < 0.0);
        assert_eq!(k.warnings.len(), 1);
    }
}
