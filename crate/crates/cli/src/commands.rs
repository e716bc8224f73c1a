use serde_json::{json, Map, Value};

use granmech::identification::isotropic::{
    self, ComponentGroup, GroupFormula, D_PROBES_3D, ERRATUM_NOTE, GRADIENT_COEFFICIENTS_3D,
    MU_PREFACTOR_NOTE, THREE_D_NOTATION_NOTE,
};
use granmech::identification::{
    engineering_from_k, identify, iso_params_from_d, isotropic_closed_forms, k_from_engineering,
    lame_from_k, mindlin_from_c, IdentifyOptions,
};
use granmech::quadrature::{QuadratureRule, DEFAULT_RULE_DEGREE};
use granmech::tensor::component_name;
use granmech::verify::{compare_legacy, run_all, VerifyConfig};
use granmech::Tensor;

use crate::config::{Command, JobConfig, Material};

/// Entries at or below this fraction of the tensor's scale are treated as
/// zero and omitted.
pub const ZERO_CUTOFF: f64 = 1e-13;

/// A rendered document and the process exit status it implies.
pub struct Outcome {
    pub doc: Value,
    pub exit_code: i32,
}

pub fn run(config: &JobConfig) -> Result<Outcome, String> {
    let doc = match config.command {
        Command::Identify => identify_cmd(config),
        Command::Verify => return verify_cmd(config),
        Command::Convert => convert_cmd(config),
        Command::Table => table_cmd(config),
        Command::DiffLegacy => diff_legacy_cmd(config),
    }
    .map_err(|e| e.to_string())?;
    Ok(Outcome { doc, exit_code: 0 })
}

/// `scale` is the size of a tensor entry expected for this material, so a
/// tensor made only of rounding noise (isotropic `𝕄`) comes out empty.
fn tensor_map(prefix: &str, t: &Tensor, scale: f64) -> Value {
    let cutoff = ZERO_CUTOFF * scale.max(t.max_abs());
    let mut map = Map::new();
    for (idx, v) in t.iter() {
        if v.abs() > cutoff {
            map.insert(component_name(prefix, &idx), json!(v));
        }
    }
    Value::Object(map)
}

fn inputs(config: &JobConfig) -> Value {
    match config.material.as_ref() {
        None => json!({}),
        Some(Material::Stiffness { kbar_eta, kbar_tau }) => {
            json!({"kbar_eta": kbar_eta, "kbar_tau": kbar_tau})
        }
        Some(Material::Engineering { young, nu }) => json!({"Y": young, "nu": nu}),
        Some(Material::Distribution {
            name,
            kappa,
            beta,
            tau,
        }) => json!({"dist": name.as_str(), "kappa": kappa, "beta": beta, "tau": tau}),
    }
}

fn meta(config: &JobConfig) -> Value {
    json!({
        "command": config.command.name(),
        "dim": config.dim,
        "L": config.length,
        "inputs": inputs(config),
        "mode": granmech::kinematics::DisplacementMode::from(config.mode).as_str(),
        "method": format!("quadrature (exact to degree {DEFAULT_RULE_DEGREE})"),
    })
}

/// `(k̄_η, k̄_τ)` of an isotropic material, with any conversion warnings.
fn integrated(
    config: &JobConfig,
    warnings: &mut Vec<String>,
) -> granmech::Result<Option<(f64, f64)>> {
    Ok(match config.material.as_ref() {
        Some(Material::Stiffness { kbar_eta, kbar_tau }) => Some((*kbar_eta, *kbar_tau)),
        Some(Material::Engineering { young, nu }) => {
            let k = k_from_engineering(config.dim, config.length, *young, *nu)?;
            warnings.extend(k.warnings);
            Some((k.kbar_eta, k.kbar_tau))
        }
        _ => None,
    })
}

fn isotropic_derived(
    dim: usize,
    length: f64,
    ke: f64,
    kt: f64,
    warnings: &mut Vec<String>,
) -> granmech::Result<Map<String, Value>> {
    let mut d = Map::new();
    d.insert("kbar_eta".into(), json!(ke));
    d.insert("kbar_tau".into(), json!(kt));
    let (lambda, mu) = lame_from_k(dim, length, ke, kt)?;
    d.insert("lambda".into(), json!(lambda));
    d.insert("mu".into(), json!(mu));
    if lambda < 0.0 {
        warnings.push(format!("lambda = {lambda:e} is negative"));
    }
    match engineering_from_k(dim, length, ke, kt) {
        Ok(e) => {
            d.insert("Y".into(), json!(e.young));
            d.insert("nu".into(), json!(e.poisson));
        }
        Err(e) => warnings.push(format!("Y and nu undefined: {e}")),
    }
    let closed = isotropic_closed_forms(dim, length, ke, kt)?;
    if dim == 3 {
        let c = iso_params_from_d(&closed.d, 1e-12)?;
        let a = mindlin_from_c(&c);
        for (name, v) in ["c3", "c4", "c5", "c6", "c7"].iter().zip(c.as_array()) {
            d.insert((*name).into(), json!(v));
        }
        for (name, v) in ["a1", "a2", "a3", "a4", "a5"].iter().zip(a.as_array()) {
            d.insert((*name).into(), json!(v));
        }
    }
    let groups =
        |g: &[(String, f64)]| Value::Object(g.iter().map(|(n, v)| (n.clone(), json!(v))).collect());
    d.insert("C_groups".into(), groups(&closed.c_groups));
    d.insert("d_groups".into(), groups(&closed.d_groups));
    Ok(d)
}

fn identify_cmd(config: &JobConfig) -> granmech::Result<Value> {
    let mut warnings = Vec::new();
    let dist = config.distribution()?;
    let rule = QuadratureRule::default_for_dim(config.dim)?;
    warnings.extend(dist.admissibility_warnings(&rule));
    let opts = IdentifyOptions::default().with_mode(config.mode.into());
    let t = identify(&dist, config.length, &opts)?;

    let derived = match integrated(config, &mut warnings)? {
        Some((ke, kt)) => {
            let d = isotropic_derived(config.dim, config.length, ke, kt, &mut warnings)?;
            if opts.mode == granmech::kinematics::DisplacementMode::Corrected {
                let closed = isotropic_closed_forms(config.dim, config.length, ke, kt)?;
                for (name, q, c) in [("C", &t.c, &closed.c), ("D", &t.d, &closed.d)] {
                    let scale = c.max_abs();
                    let diff = granmech::tensor::max_abs_diff(q, c)?;
                    if scale > 0.0 && diff > config.tol * scale {
                        warnings.push(format!(
                            "{name}: quadrature and closed form differ by {diff:e} (relative {:e})",
                            diff / scale
                        ));
                    }
                }
            } else {
                warnings.push(
                    "derived parameters use the closed forms of the corrected kinematics".into(),
                );
            }
            Value::Object(d)
        }
        None => {
            warnings.push("derived parameters are defined for isotropic materials only".into());
            json!({})
        }
    };

    let scale = t.c.max_abs();
    Ok(json!({
        "meta": meta(config),
        "C": tensor_map("C", &t.c, scale),
        "M": tensor_map("M", &t.m, scale * config.length),
        "D": tensor_map("D", &t.d, scale * config.length * config.length),
        "derived": derived,
        "warnings": warnings,
    }))
}

fn convert_cmd(config: &JobConfig) -> granmech::Result<Value> {
    let mut warnings = Vec::new();
    let (ke, kt) = integrated(config, &mut warnings)?.expect("validated isotropic");
    if ke < 0.0 || kt < 0.0 {
        // already reported for the engineering path
        if matches!(config.material, Some(Material::Stiffness { .. })) {
            warnings.push("negative integrated stiffness (physically inadmissible)".into());
        }
    }
    let derived = isotropic_derived(config.dim, config.length, ke, kt, &mut warnings)?;
    Ok(json!({
        "meta": meta(config),
        "derived": Value::Object(derived),
        "warnings": warnings,
    }))
}

fn formula_string(f: &GroupFormula, power: u32) -> String {
    let sign = if f.tau < 0.0 { '-' } else { '+' };
    format!(
        "L^{power}/{} ({} kbar_eta {sign} {} kbar_tau)",
        f.denominator,
        f.eta,
        f.tau.abs()
    )
}

fn groups_json(
    prefix: &str,
    groups: &[ComponentGroup],
    power: u32,
    values: Option<(f64, f64, f64)>,
) -> Value {
    Value::Array(
        groups
            .iter()
            .map(|g| {
                let lines: Vec<Value> = g
                    .lines
                    .iter()
                    .map(|l| {
                        let comps: Vec<String> = l
                            .components
                            .iter()
                            .map(|c| {
                                let resolved = isotropic::APPENDIX_ERRATA
                                    .iter()
                                    .find(|(p, _)| p == c)
                                    .map(|(_, r)| *r)
                                    .unwrap_or(c);
                                format!("{prefix}_{resolved}")
                            })
                            .collect();
                        json!({"label": l.printed_label, "factor": l.factor, "components": comps})
                    })
                    .collect();
                let mut obj = json!({
                    "name": g.name,
                    "formula": formula_string(&g.formula, power),
                    "lines": lines,
                });
                if let Some((l, ke, kt)) = values {
                    obj["value"] = json!(g.formula.value(l.powi(power as i32), ke, kt));
                }
                obj
            })
            .collect(),
    )
}

fn table_cmd(config: &JobConfig) -> granmech::Result<Value> {
    let mut warnings = Vec::new();
    let dim = config.dim;
    let values = integrated(config, &mut warnings)?.map(|(ke, kt)| (config.length, ke, kt));
    let mut doc = json!({
        "meta": meta(config),
        "C_groups": groups_json("C", isotropic::c_groups(dim)?, 2, values),
        "D_groups": groups_json("D", isotropic::d_groups(dim)?, 4, values),
    });
    let mut notes = Vec::new();
    if dim == 3 {
        warnings.push(MU_PREFACTOR_NOTE.to_string());
        notes.push(THREE_D_NOTATION_NOTE);
        notes.push(ERRATUM_NOTE);
        let named = |list: &[(&str, GroupFormula)], prefix: &str| {
            Value::Array(
                list.iter()
                    .map(|(n, f)| {
                        let mut o = json!({"name": format!("{prefix}{n}"), "formula": formula_string(f, 4)});
                        if let Some((l, ke, kt)) = values {
                            o["value"] = json!(f.value(l.powi(4), ke, kt));
                        }
                        o
                    })
                    .collect(),
            )
        };
        doc["D_probes"] = named(D_PROBES_3D, "D_");
        doc["gradient_coefficients"] = named(&GRADIENT_COEFFICIENTS_3D, "");
    }
    if let Some((l, ke, kt)) = values {
        doc["derived"] = Value::Object(isotropic_derived(dim, l, ke, kt, &mut warnings)?);
    }
    doc["notes"] = json!(notes);
    doc["warnings"] = json!(warnings);
    Ok(doc)
}

fn diff_legacy_cmd(config: &JobConfig) -> granmech::Result<Value> {
    let mut warnings = Vec::new();
    let dist = config.distribution()?;
    warnings.extend(dist.admissibility_warnings(&QuadratureRule::default_for_dim(config.dim)?));
    let cmp = compare_legacy(&dist, config.length)?;
    let groups: Vec<Value> = cmp
        .groups
        .iter()
        .map(|g| {
            json!({
                "group": g.group,
                "component": g.component,
                "corrected": g.corrected,
                "legacy": g.legacy,
                "relative_difference": g.relative_difference,
            })
        })
        .collect();
    let differing: Vec<&str> = cmp
        .groups
        .iter()
        .filter(|g| g.relative_difference > 0.01)
        .map(|g| g.group.as_str())
        .collect();

    let corrected = identify(&dist, config.length, &IdentifyOptions::default())?;
    let legacy = identify(
        &dist,
        config.length,
        &IdentifyOptions::default().with_mode(granmech::kinematics::DisplacementMode::Legacy),
    )?;
    let cutoff = ZERO_CUTOFF * corrected.d.max_abs().max(legacy.d.max_abs());
    let mut side = Map::new();
    for (idx, a) in corrected.d.iter() {
        let b = legacy.d.get(&idx);
        if a.abs() > cutoff || b.abs() > cutoff {
            side.insert(
                component_name("D", &idx),
                json!({"corrected": a, "legacy": b}),
            );
        }
    }
    Ok(json!({
        "meta": meta(config),
        "C_max_difference": cmp.c_max_difference,
        "M_max_difference": cmp.m_max_difference,
        "D_max_difference": cmp.d_max_difference,
        "groups": groups,
        "differing_groups": differing,
        "D": Value::Object(side),
        "warnings": warnings,
    }))
}

fn verify_cmd(config: &JobConfig) -> Result<Outcome, String> {
    let vc = VerifyConfig {
        seed: config.seed,
        samples: config.samples,
        tol: config.tol,
    };
    let report = run_all(&vc).map_err(|e| e.to_string())?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "max_violation": c.max_violation,
                "tolerance": c.tolerance,
                "detail": c.detail,
            })
        })
        .collect();
    let passed = report.all_passed();
    Ok(Outcome {
        doc: json!({
            "meta": {"command": "verify", "seed": vc.seed, "samples": vc.samples, "tol": vc.tol},
            "checks": checks,
            "all_passed": passed,
        }),
        exit_code: if passed { 0 } else { 1 },
    })
}
