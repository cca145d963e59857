//! TOML run configuration and its resolution into a [`RunSpec`].

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use cnnw_core::limiter::HybridConfig;
use cnnw_core::nnw::{WeightKind, WeightScheme};
use cnnw_core::parallel::ExecMode;
use cnnw_core::schemes::{InterpConfig, SchemeKind, VariableSet};
use cnnw_core::solver::{CaseKind, CaseParams, RunSpec, SchemeChoice};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub case: CaseSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub scheme: SchemeSection,
    #[serde(default)]
    pub weights: WeightsSection,
    #[serde(default)]
    pub variables: VariablesSection,
    #[serde(default)]
    pub time: TimeSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSection {
    pub name: String,
    pub mach: Option<f64>,
    pub vortex_strength: Option<f64>,
    pub shock_mach: Option<f64>,
    pub vortex_mach: Option<f64>,
    pub vortex_center: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// Polynomial degree; 4 gives the fifth-order schemes.
    pub k: Option<usize>,
    pub mx: Option<usize>,
    pub my: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSection {
    /// A single scheme name, or `HCCS(1,1,1,1)` / `HCCS(1,0,0,1)`.
    pub kind: Option<String>,
    pub a: Option<f64>,
    pub dv: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightsKind {
    Linear,
    Js,
    Z,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSection {
    pub kind: Option<WeightsKind>,
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariablesSection {
    pub set: Option<VariableSet>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub t_end: Option<f64>,
    /// Fixed step; overrides `cfl`.
    pub dt: Option<f64>,
    pub cfl: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Artifact {
    Field,
    Norms,
    Conservation,
    Troubled,
}

impl Artifact {
    pub const ALL: [Artifact; 4] = [Artifact::Field, Artifact::Norms, Artifact::Conservation, Artifact::Troubled];
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub directory: Option<PathBuf>,
    /// Time between conservation samples.
    pub cadence: Option<f64>,
    pub dump: Option<Vec<Artifact>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))
    }

    /// Resolve into a run specification; `exec` comes from the command line.
    pub fn to_spec(&self, exec: ExecMode) -> Result<RunSpec, CliError> {
        let case = CaseKind::parse(&self.case.name)?;
        let scheme = parse_scheme(&self.scheme)?;
        let mut spec = RunSpec::new(case, scheme);
        spec.exec = exec;

        let p = &mut spec.params;
        let c = &self.case;
        set(&mut p.mach, c.mach);
        set(&mut p.vortex_strength, c.vortex_strength);
        set(&mut p.shock_mach, c.shock_mach);
        set(&mut p.vortex_mach, c.vortex_mach);
        set(&mut p.vortex_center, c.vortex_center);

        set(&mut spec.k, self.grid.k);
        set(&mut spec.cells.0, self.grid.mx);
        if case.dim() == 2 {
            set(&mut spec.cells.1, self.grid.my);
        } else if self.grid.my.is_some() {
            return Err(CliError::Usage(format!("[grid] my is not used by the 1D case {}", case.name())));
        }

        let variables = self.variables.set.unwrap_or_default();
        spec.interp = match self.weights.kind.unwrap_or(WeightsKind::Z) {
            WeightsKind::Linear => InterpConfig {
                variables,
                ..InterpConfig::linear()
            },
            kind => {
                let mut w = if kind == WeightsKind::Js { WeightScheme::js() } else { WeightScheme::z() };
                set(&mut w.epsilon, self.weights.epsilon);
                InterpConfig::nonlinear(w, variables)
            }
        };

        set(&mut spec.time.t_end, self.time.t_end);
        set(&mut spec.time.cfl, self.time.cfl);
        spec.time.dt = self.time.dt;
        spec.sample_interval = self.output.cadence;
        spec.validate()?;
        Ok(spec)
    }

    /// Fully explicit configuration that reproduces `spec`.
    pub fn effective(spec: &RunSpec, output: &OutputSection) -> Self {
        let CaseParams {
            mach,
            vortex_strength,
            shock_mach,
            vortex_mach,
            vortex_center,
        } = spec.params;
        let (kind, a, dv) = match spec.scheme {
            SchemeChoice::Single(s) => (s.label(spec.k).to_string(), None, None),
            SchemeChoice::Hybrid(h) => (spec.scheme.label(spec.k), Some(h.a), Some(h.dv)),
        };
        let (weights, epsilon) = match spec.interp.weights {
            cnnw_core::nnw::WeightMode::Linear => (WeightsKind::Linear, None),
            cnnw_core::nnw::WeightMode::Nonlinear(w) => (
                match w.kind {
                    WeightKind::Js => WeightsKind::Js,
                    WeightKind::Z => WeightsKind::Z,
                },
                Some(w.epsilon),
            ),
        };
        Self {
            case: CaseSection {
                name: spec.case.name().into(),
                mach: Some(mach),
                vortex_strength: Some(vortex_strength),
                shock_mach: Some(shock_mach),
                vortex_mach: Some(vortex_mach),
                vortex_center: Some(vortex_center),
            },
            grid: GridSection {
                k: Some(spec.k),
                mx: Some(spec.cells.0),
                my: (spec.case.dim() == 2).then_some(spec.cells.1),
            },
            scheme: SchemeSection { kind: Some(kind), a, dv },
            weights: WeightsSection {
                kind: Some(weights),
                epsilon,
            },
            variables: VariablesSection {
                set: Some(spec.interp.variables),
            },
            time: TimeSection {
                t_end: Some(spec.time.t_end),
                dt: spec.time.dt,
                cfl: Some(spec.time.cfl),
            },
            output: OutputSection {
                directory: output.directory.clone(),
                cadence: spec.sample_interval,
                dump: Some(output.dump.clone().unwrap_or_else(|| Artifact::ALL.to_vec())),
            },
        }
    }
}

fn set<T>(dst: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *dst = v;
    }
}

fn parse_scheme(s: &SchemeSection) -> Result<SchemeChoice, CliError> {
    let name: String = s
        .kind
        .as_deref()
        .unwrap_or("HCCS(1,1,1,1)")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_uppercase();
    let a = s.a.unwrap_or(0.5);
    let preset = match name.as_str() {
        "HCCS(1,1,1,1)" => Some(HybridConfig::full(a)),
        "HCCS(1,0,0,1)" => Some(HybridConfig::cpr_c2nnw2(a)),
        _ => None,
    };
    match preset {
        Some(h) => {
            let dv = s.dv.unwrap_or(h.dv);
            Ok(SchemeChoice::Hybrid(HybridConfig::new(a, dv)?))
        }
        None if s.a.is_some() || s.dv.is_some() => Err(CliError::Usage(format!(
            "[scheme] a and dv apply only to the hybrid schemes, not {name}"
        ))),
        None => Ok(SchemeChoice::Single(SchemeKind::parse(&name)?)),
    }
}
