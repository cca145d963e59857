use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limiter::HybridConfig;
use crate::mesh::Mesh;
use crate::parallel::ExecMode;
use crate::physics::ConservationLaw;
use crate::schemes::{InterpConfig, SchemeKind};

use super::cases::{advection_case, euler1d_case, euler2d_case, CaseKind, CaseParams, Setup};
use super::conservation::{integral, ConservationReport};
use super::norms::{nodal_norms, ErrorNorms};
use super::operator::Discretization;
use super::rk3::{rk3_step, Rk3Workspace};

/// A single scheme everywhere, or the indicator-driven hybrid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SchemeChoice {
    Single(SchemeKind),
    Hybrid(HybridConfig),
}

impl SchemeChoice {
    pub fn label(&self, k: usize) -> String {
        match self {
            SchemeChoice::Single(s) => s.label(k).to_string(),
            SchemeChoice::Hybrid(h) if h.dv[0] == h.dv[1] && h.dv[1] == h.dv[2] => "HCCS(1,0,0,1)".into(),
            SchemeChoice::Hybrid(_) => "HCCS(1,1,1,1)".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeControl {
    pub t_end: f64,
    /// Fixed step; when absent the step follows the CFL number.
    pub dt: Option<f64>,
    pub cfl: f64,
}

impl TimeControl {
    pub fn fixed(t_end: f64, dt: f64) -> Self {
        Self { t_end, dt: Some(dt), cfl: 0.5 }
    }

    pub fn cfl(t_end: f64, cfl: f64) -> Self {
        Self { t_end, dt: None, cfl }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub case: CaseKind,
    pub k: usize,
    /// `(mx, my)`; `my` is ignored by 1D cases.
    pub cells: (usize, usize),
    pub scheme: SchemeChoice,
    pub interp: InterpConfig,
    pub time: TimeControl,
    pub params: CaseParams,
    /// Spacing of conservation samples; `None` samples only the final time.
    pub sample_interval: Option<f64>,
    pub exec: ExecMode,
}

impl RunSpec {
    /// Defaults for `case`: its grid and end time, CFL 0.5, Z weights on
    /// characteristic variables.
    pub fn new(case: CaseKind, scheme: SchemeChoice) -> Self {
        Self {
            case,
            k: 4,
            cells: case.default_cells(),
            scheme,
            interp: InterpConfig::default(),
            time: TimeControl::cfl(case.default_t_end(), 0.5),
            params: CaseParams::default(),
            sample_interval: None,
            exec: ExecMode::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(dt) = self.time.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(Error::config(format!("dt must be positive, got {dt}")));
            }
        } else if !(self.time.cfl > 0.0 && self.time.cfl.is_finite()) {
            return Err(Error::config(format!("CFL must be positive, got {}", self.time.cfl)));
        }
        if !(self.time.t_end >= 0.0 && self.time.t_end.is_finite()) {
            return Err(Error::config(format!("end time must be non-negative, got {}", self.time.t_end)));
        }
        if let Some(s) = self.sample_interval {
            if !(s > 0.0) {
                return Err(Error::config("sample interval must be positive"));
            }
        }
        if let SchemeChoice::Hybrid(h) = self.scheme {
            HybridConfig::new(h.a, h.dv)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TroubledSample {
    pub step: usize,
    pub t: f64,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub mesh: Mesh,
    pub t: f64,
    pub steps: usize,
    /// Primitive variable names, in storage order.
    pub variables: Vec<&'static str>,
    /// Primitive values, `variables.len()` per node.
    pub primitive: Vec<f64>,
    pub conservative: Vec<f64>,
    /// Assignment and indicator evaluated on the final state.
    pub tags: Vec<SchemeKind>,
    pub indicator: Vec<f64>,
    /// Cells not running CPR, once per step.
    pub troubled: Vec<TroubledSample>,
    pub conservation: ConservationReport,
    /// Density (or scalar) error against the reference, when one exists.
    pub errors: Option<ErrorNorms>,
}

impl RunOutput {
    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn final_troubled(&self) -> usize {
        self.tags.iter().filter(|&&t| t != SchemeKind::Cpr).count()
    }
}

pub fn run_case(spec: &RunSpec) -> Result<RunOutput> {
    spec.validate()?;
    let (mx, my) = spec.cells;
    match spec.case {
        CaseKind::Advection => run_setup(advection_case(spec.k, mx)?, spec, &["u"]),
        CaseKind::Sod | CaseKind::Lax | CaseKind::ShuOsher => {
            run_setup(euler1d_case(spec.case, spec.k, mx)?, spec, &["rho", "u", "p"])
        }
        _ => run_setup(
            euler2d_case(spec.case, spec.k, mx, my, &spec.params)?,
            spec,
            &["rho", "u", "v", "p"],
        ),
    }
}

fn run_setup<L: ConservationLaw<N>, const N: usize>(
    setup: Setup<L, N>,
    spec: &RunSpec,
    names: &[&'static str],
) -> Result<RunOutput> {
    let Setup {
        law,
        mesh,
        bc,
        initial,
        exact,
    } = setup;
    let periodic = bc.fully_periodic(&mesh);
    let disc = Discretization::new(law, mesh, bc, spec.interp, spec.exec)?;
    disc.check_field(&initial).map_err(|e| e.at_stage(0, 0.0))?;
    let mut u = initial;
    let di = disc.law.density_index();
    let mesh = &disc.mesh;
    let mut report = ConservationReport::new(periodic, integral(mesh, |i| u[i][di]));

    let assign = |u: &[[f64; N]], t: f64| -> (Vec<f64>, Vec<SchemeKind>) {
        match spec.scheme {
            SchemeChoice::Single(kind) => (vec![0.0; mesh.n_cells()], disc.uniform_tags(kind)),
            SchemeChoice::Hybrid(cfg) => disc.select(u, t, &cfg),
        }
    };

    let t_end = spec.time.t_end;
    let fixed = spec.time.dt.map(|dt| {
        let n = (t_end / dt - 1e-9).ceil().max(0.0) as usize;
        (n, if n > 0 { t_end / n as f64 } else { dt })
    });
    let stages_order = (2 * mesh.degree() + 1) as f64;
    let mut work = Rk3Workspace::default();
    let mut troubled = Vec::new();
    let mut t = 0.0;
    let mut step = 0usize;
    let mut next_sample = spec.sample_interval.unwrap_or(f64::INFINITY);
    loop {
        let dt = match fixed {
            Some((n, dt)) => {
                if step >= n {
                    break;
                }
                dt
            }
            None => {
                if t >= t_end * (1.0 - 1e-14) {
                    break;
                }
                let rate = disc.wave_rate(&u);
                let dt = spec.time.cfl / (stages_order * rate);
                if !(dt > 0.0 && dt.is_finite()) {
                    return Err(Error::Numeric(format!("invalid time step {dt} at t = {t}")));
                }
                dt.min(t_end - t)
            }
        };
        let (_, tags) = assign(&u, t);
        troubled.push(TroubledSample {
            step,
            t,
            count: tags.iter().filter(|&&k| k != SchemeKind::Cpr).count(),
        });
        rk3_step(
            &mut u,
            t,
            dt,
            &mut work,
            |v, s, out| disc.residual(v, &tags, s, out),
            |v| disc.check_field(v),
        )?;
        step += 1;
        t = match fixed {
            Some((n, _)) if step == n => t_end,
            Some((_, dt)) => step as f64 * dt,
            None => t + dt,
        };
        if t >= next_sample * (1.0 - 1e-12) {
            report.record(t, integral(mesh, |i| u[i][di]));
            while next_sample <= t * (1.0 + 1e-12) {
                next_sample += spec.sample_interval.unwrap_or(f64::INFINITY);
            }
        }
    }
    if report.samples.last().map(|s| s.t) != Some(t) {
        report.record(t, integral(mesh, |i| u[i][di]));
    }

    let (indicator, tags) = assign(&u, t);
    let errors = match &exact {
        Some(f) => {
            let exact_vals: Vec<f64> = mesh.positions().iter().map(|&(x, y)| f(x, y, t)[di]).collect();
            let num: Vec<f64> = u.iter().map(|v| v[di]).collect();
            Some(nodal_norms(&num, &exact_vals)?)
        }
        None => None,
    };
    let primitive = u.iter().flat_map(|v| disc.law.to_primitive(v)).collect();
    let conservative = u.iter().flat_map(|v| *v).collect();
    Ok(RunOutput {
        mesh: disc.mesh.clone(),
        t,
        steps: step,
        variables: names.to_vec(),
        primitive,
        conservative,
        tags,
        indicator,
        troubled,
        conservation: report,
        errors,
    })
}
