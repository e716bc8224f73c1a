use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde::Deserialize;

use granmech::identification::StiffnessDistribution;
use granmech::kinematics::DisplacementMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Identify C, M and D from a stiffness distribution
    Identify,
    /// Run the invariant and oracle checks
    Verify,
    /// Convert between integrated stiffnesses and engineering constants
    Convert,
    /// List the grouped closed-form components
    Table,
    /// Compare D identified with corrected and legacy kinematics
    DiffLegacy,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Identify => "identify",
            Command::Verify => "verify",
            Command::Convert => "convert",
            Command::Table => "table",
            Command::DiffLegacy => "diff-legacy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Corrected,
    Legacy,
}

impl From<Mode> for DisplacementMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Corrected => DisplacementMode::Corrected,
            Mode::Legacy => DisplacementMode::Legacy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum DistName {
    #[serde(rename = "biased-c1")]
    #[value(name = "biased-c1")]
    BiasedC1,
    #[serde(rename = "fabric-c1sq")]
    #[value(name = "fabric-c1sq")]
    FabricC1sq,
}

impl DistName {
    pub fn as_str(self) -> &'static str {
        match self {
            DistName::BiasedC1 => "biased-c1",
            DistName::FabricC1sq => "fabric-c1sq",
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Spatial dimension (2 or 3) [default: 3]
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Grain-pair distance [default: 1]
    #[arg(long = "L", global = true)]
    pub length: Option<f64>,
    /// Integrated normal stiffness
    #[arg(long, global = true)]
    pub keta: Option<f64>,
    /// Integrated tangential stiffness
    #[arg(long, global = true)]
    pub ktau: Option<f64>,
    /// Young's modulus
    #[arg(long, global = true)]
    pub young: Option<f64>,
    /// Poisson ratio
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Built-in anisotropic distribution
    #[arg(long, global = true)]
    pub dist: Option<DistName>,
    /// Distribution parameter as key=value (kappa, beta, tau)
    #[arg(long = "dist-param", global = true, value_name = "K=V")]
    pub dist_param: Vec<String>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Relative tolerance for the oracle checks [default: 1e-10]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Kinematics used by identify [default: corrected]
    #[arg(long, global = true)]
    pub mode: Option<Mode>,
    /// Seed for verify [default: 20240601]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random samples per dimension for verify [default: 100]
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// TOML file with the same keys as the flags; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    dim: Option<usize>,
    #[serde(rename = "L")]
    length: Option<f64>,
    keta: Option<f64>,
    ktau: Option<f64>,
    young: Option<f64>,
    nu: Option<f64>,
    dist: Option<DistName>,
    #[serde(default, rename = "dist-param")]
    dist_param: BTreeMap<String, f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    tol: Option<f64>,
    mode: Option<Mode>,
    seed: Option<u64>,
    samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Material {
    Stiffness {
        kbar_eta: f64,
        kbar_tau: f64,
    },
    Engineering {
        young: f64,
        nu: f64,
    },
    Distribution {
        name: DistName,
        kappa: f64,
        beta: f64,
        tau: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub dim: usize,
    pub length: f64,
    pub material: Option<Material>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tol: f64,
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
}

fn read_file(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

fn parse_dist_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("--dist-param expects key=value, got '{s}'"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("--dist-param {k}: '{v}' is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn finite(name: &str, v: Option<f64>) -> Result<Option<f64>, String> {
    match v {
        Some(x) if !x.is_finite() => Err(format!("{name} must be finite, got {x}")),
        other => Ok(other),
    }
}

impl JobConfig {
    /// Merges the optional config file with the flags (flags win) and validates.
    pub fn resolve(command: Command, flags: &Flags) -> Result<Self, String> {
        let file = match &flags.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let dim = flags.dim.or(file.dim).unwrap_or(3);
        if dim != 2 && dim != 3 {
            return Err(format!("--dim must be 2 or 3, got {dim}"));
        }
        let length = finite("--L", flags.length.or(file.length))?.unwrap_or(1.0);
        if length <= 0.0 {
            return Err(format!("--L must be positive, got {length}"));
        }
        let tol = finite("--tol", flags.tol.or(file.tol))?.unwrap_or(1e-10);
        if tol <= 0.0 {
            return Err(format!("--tol must be positive, got {tol}"));
        }

        let keta = finite("--keta", flags.keta.or(file.keta))?;
        let ktau = finite("--ktau", flags.ktau.or(file.ktau))?;
        let young = finite("--young", flags.young.or(file.young))?;
        let nu = finite("--nu", flags.nu.or(file.nu))?;
        let dist = flags.dist.or(file.dist);

        let mut params = file.dist_param.clone();
        for p in &flags.dist_param {
            let (k, v) = parse_dist_param(p)?;
            params.insert(k, v);
        }

        let stiffness = keta.is_some() || ktau.is_some();
        let engineering = young.is_some() || nu.is_some();
        let given = [stiffness, engineering, dist.is_some()]
            .iter()
            .filter(|b| **b)
            .count();
        if given > 1 {
            return Err("give exactly one material: --keta/--ktau, --young/--nu, or --dist".into());
        }
        if dist.is_none() && !params.is_empty() {
            return Err("--dist-param requires --dist".into());
        }

        let material = if stiffness {
            match (keta, ktau) {
                (Some(kbar_eta), Some(kbar_tau)) => {
                    Some(Material::Stiffness { kbar_eta, kbar_tau })
                }
                _ => return Err("--keta and --ktau must be given together".into()),
            }
        } else if engineering {
            match (young, nu) {
                (Some(young), Some(nu)) => Some(Material::Engineering { young, nu }),
                _ => return Err("--young and --nu must be given together".into()),
            }
        } else if let Some(name) = dist {
            for k in params.keys() {
                if !matches!(k.as_str(), "kappa" | "beta" | "tau") {
                    return Err(format!(
                        "unknown distribution parameter '{k}' (expected kappa, beta, tau)"
                    ));
                }
            }
            Some(Material::Distribution {
                name,
                kappa: params.get("kappa").copied().unwrap_or(1.0),
                beta: params.get("beta").copied().unwrap_or(1.0),
                tau: params.get("tau").copied().unwrap_or(0.0),
            })
        } else {
            None
        };

        let needs_material = matches!(
            command,
            Command::Identify | Command::Convert | Command::DiffLegacy
        );
        if needs_material && material.is_none() {
            return Err(format!(
                "{} needs a material: --keta/--ktau, --young/--nu, or --dist",
                command.name()
            ));
        }
        if matches!(command, Command::Convert | Command::Table)
            && matches!(material, Some(Material::Distribution { .. }))
        {
            return Err(format!("{} needs an isotropic material", command.name()));
        }
        if command == Command::Verify && material.is_some() {
            return Err("verify takes no material; it draws its own inputs".into());
        }

        Ok(JobConfig {
            command,
            dim,
            length,
            material,
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or_default(),
            tol,
            mode: flags.mode.or(file.mode).unwrap_or_default(),
            seed: flags.seed.or(file.seed).unwrap_or(20_240_601),
            samples: flags.samples.or(file.samples).unwrap_or(100).max(1),
        })
    }

    pub fn distribution(&self) -> granmech::Result<StiffnessDistribution> {
        match self.material.as_ref().expect("validated") {
            Material::Stiffness { kbar_eta, kbar_tau } => {
                StiffnessDistribution::isotropic(self.dim, *kbar_eta, *kbar_tau)
            }
            Material::Engineering { young, nu } => {
                let k = granmech::identification::k_from_engineering(
                    self.dim,
                    self.length,
                    *young,
                    *nu,
                )?;
                StiffnessDistribution::isotropic(self.dim, k.kbar_eta, k.kbar_tau)
            }
            Material::Distribution {
                name,
                kappa,
                beta,
                tau,
            } => match name {
                DistName::BiasedC1 => {
                    StiffnessDistribution::biased_c1(self.dim, *kappa, *beta, *tau)
                }
                DistName::FabricC1sq => {
                    StiffnessDistribution::fabric_c1sq(self.dim, *kappa, *beta, *tau)
                }
            },
        }
    }
}
