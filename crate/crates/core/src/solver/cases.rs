//! Initial and boundary data of the benchmark problems.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{Boundaries, Boundary, GhostPoint, Mesh};
use crate::physics::{Advection, ConservationLaw, Euler1d, Euler2d};

use super::exact_riemann::ExactRiemann;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// `u_t + u_x = 0` on `[−3, 3]` with `sin(πx/3)`.
    Advection,
    Sod,
    Lax,
    ShuOsher,
    /// Isentropic vortex on `[−10, 10]²` in a `(1, 1)` mean flow.
    Vortex,
    /// Four-quadrant Riemann problem with fixed quadrant states.
    Riemann2d,
    /// Four-quadrant Riemann problem parameterised by the shock Mach number.
    RiemannMach,
    DoubleMach,
    ShockVortex,
}

impl CaseKind {
    pub const ALL: [CaseKind; 9] = [
        CaseKind::Advection,
        CaseKind::Sod,
        CaseKind::Lax,
        CaseKind::ShuOsher,
        CaseKind::Vortex,
        CaseKind::Riemann2d,
        CaseKind::RiemannMach,
        CaseKind::DoubleMach,
        CaseKind::ShockVortex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Advection => "advection",
            CaseKind::Sod => "sod",
            CaseKind::Lax => "lax",
            CaseKind::ShuOsher => "shu_osher",
            CaseKind::Vortex => "vortex",
            CaseKind::Riemann2d => "riemann2d",
            CaseKind::RiemannMach => "riemann_mach",
            CaseKind::DoubleMach => "double_mach",
            CaseKind::ShockVortex => "shock_vortex",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::config(format!("unknown case '{name}'")))
    }

    pub fn dim(self) -> usize {
        match self {
            CaseKind::Advection | CaseKind::Sod | CaseKind::Lax | CaseKind::ShuOsher => 1,
            _ => 2,
        }
    }

    pub fn default_t_end(self) -> f64 {
        match self {
            CaseKind::Advection => 3.0,
            CaseKind::Sod => 0.2,
            CaseKind::Lax => 0.1,
            CaseKind::ShuOsher => 1.8,
            CaseKind::Vortex => 2.0,
            CaseKind::Riemann2d => 0.8,
            CaseKind::RiemannMach => 0.1,
            CaseKind::DoubleMach => 0.2,
            CaseKind::ShockVortex => 0.7,
        }
    }

    /// Default cell counts `(mx, my)`.
    pub fn default_cells(self) -> (usize, usize) {
        match self {
            CaseKind::Advection => (12, 1),
            CaseKind::Sod => (40, 1),
            CaseKind::Lax => (100, 1),
            CaseKind::ShuOsher => (80, 1),
            CaseKind::Vortex => (40, 40),
            CaseKind::Riemann2d | CaseKind::RiemannMach => (40, 40),
            CaseKind::DoubleMach => (108, 27),
            CaseKind::ShockVortex => (70, 35),
        }
    }

    /// Cases with a closed-form or exact-Riemann reference.
    pub fn has_reference(self) -> bool {
        matches!(self, CaseKind::Advection | CaseKind::Sod | CaseKind::Lax | CaseKind::Vortex)
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Case parameters beyond the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseParams {
    /// Shock Mach number of the parameterised Riemann problem.
    pub mach: f64,
    pub vortex_strength: f64,
    /// Shock Mach number and vortex Mach number of the shock–vortex case.
    pub shock_mach: f64,
    pub vortex_mach: f64,
    pub vortex_center: (f64, f64),
}

impl Default for CaseParams {
    fn default() -> Self {
        Self {
            mach: 3.145,
            vortex_strength: 5.0,
            shock_mach: 1.5,
            vortex_mach: 0.9,
            vortex_center: (0.25, 0.5),
        }
    }
}

/// Reference solution as a conservative state at `(x, y, t)`.
pub type ExactFn<const N: usize> = Arc<dyn Fn(f64, f64, f64) -> [f64; N] + Send + Sync>;

/// Everything needed to start a run.
pub struct Setup<L, const N: usize> {
    pub law: L,
    pub mesh: Mesh,
    pub bc: Boundaries<N>,
    pub initial: Vec<[f64; N]>,
    pub exact: Option<ExactFn<N>>,
}

pub fn advection_case(k: usize, cells: usize) -> Result<Setup<Advection, 1>> {
    let mesh = Mesh::line(k, cells, (-3.0, 3.0))?;
    let f = |x: f64| (PI * x / 3.0).sin();
    Ok(Setup {
        law: Advection::new_1d(1.0),
        initial: mesh.sample(|x, _| [f(x)]),
        mesh,
        bc: Boundaries::periodic(),
        exact: Some(Arc::new(move |x, _, t| [f(x - t)])),
    })
}

pub fn euler1d_case(kind: CaseKind, k: usize, cells: usize) -> Result<Setup<Euler1d, 3>> {
    let law = Euler1d::default();
    let (range, left, right, x0): ((f64, f64), [f64; 3], [f64; 3], f64) = match kind {
        CaseKind::Sod => ((0.0, 1.0), [1.0, 0.0, 1.0], [0.125, 0.0, 0.1], 0.5),
        CaseKind::Lax => ((0.0, 1.0), [0.445, 0.698, 3.528], [0.5, 0.0, 0.571], 0.5),
        CaseKind::ShuOsher => ((-5.0, 5.0), [3.857143, 2.629369, 10.333333], [1.0, 0.0, 1.0], -4.0),
        other => return Err(Error::config(format!("case {other} is not a 1D Euler problem"))),
    };
    let mesh = Mesh::line(k, cells, range)?;
    let prim = move |x: f64| {
        if x < x0 {
            left
        } else if kind == CaseKind::ShuOsher {
            [1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0]
        } else {
            right
        }
    };
    let initial = mesh.sample(|x, _| law.from_primitive(&prim(x)));
    let (bc, exact): (Boundaries<3>, Option<ExactFn<3>>) = match kind {
        CaseKind::ShuOsher => {
            let mut bc = Boundaries::uniform(Boundary::Outflow);
            bc.left = Boundary::Inflow(law.from_primitive(&left));
            (bc, None)
        }
        _ => {
            let r = ExactRiemann::new(law.gamma, left, right)?;
            let l2 = law.clone();
            (
                Boundaries::uniform(Boundary::Outflow),
                Some(Arc::new(move |x, _, t| l2.from_primitive(&r.at(x, x0, t)))),
            )
        }
    };
    Ok(Setup {
        law,
        mesh,
        bc,
        initial,
        exact,
    })
}

/// Primitive vortex state at offset `(dx, dy)` from its centre.
fn isentropic_vortex(gamma: f64, strength: f64, dx: f64, dy: f64) -> [f64; 4] {
    let r2 = dx * dx + dy * dy;
    let du = strength / (2.0 * PI) * (0.5 * (1.0 - r2)).exp();
    let dt = -(gamma - 1.0) * strength * strength / (8.0 * gamma * PI * PI) * (1.0 - r2).exp();
    let temp = 1.0 + dt;
    let rho = temp.powf(1.0 / (gamma - 1.0));
    [rho, 1.0 - du * dy, 1.0 + du * dx, rho * temp]
}

/// States `V1..V4` of the Mach-parameterised four-quadrant problem.
pub fn riemann_mach_states(gamma: f64, mach: f64) -> [[f64; 4]; 4] {
    let (rho3, p3) = (0.138, 0.029);
    let c3 = (gamma * p3 / rho3).sqrt();
    let u3 = mach * c3 / 2f64.sqrt();
    let v3 = u3;
    let s23 = (3.0 - gamma) / 4.0 * v3 - (c3 * c3 + ((gamma + 1.0) / 4.0 * v3).powi(2)).sqrt();
    let rho2 = -rho3 * v3 / s23 + rho3;
    let u2 = u3;
    let p2 = (rho3 * v3 * v3 + p3) - s23 * rho3 * v3;
    let c2sq = gamma * p2 / rho2;
    let s12 = (3.0 - gamma) / 4.0 * u2 - (c2sq + ((gamma + 1.0) / 4.0 * u2).powi(2)).sqrt();
    let rho1 = -rho2 * u2 / s12 + rho2;
    let p1 = (rho2 * u2 * u2 + p2) - s12 * rho2 * u2;
    [
        [rho1, 0.0, 0.0, p1],
        [rho2, u2, 0.0, p2],
        [rho3, u3, v3, p3],
        [rho2, 0.0, u2, p2],
    ]
}

/// The standard four-quadrant states.
pub const RIEMANN_STATES: [[f64; 4]; 4] = [
    [1.5, 0.0, 0.0, 1.5],
    [0.5323, 1.206, 0.0, 0.3],
    [0.138, 1.206, 1.206, 0.029],
    [0.5323, 0.0, 1.206, 0.3],
];

/// Tangential velocity of the composite vortex and the temperature it
/// induces in radial equilibrium, with `T = 1` outside `r = b`.
fn composite_vortex(gamma: f64, vm: f64, r: f64) -> (f64, f64) {
    let (a, b) = (0.075, 0.175);
    if r >= b {
        return (0.0, 1.0);
    }
    let c = vm * a / (a * a - b * b);
    let g2 = |s: f64| c * c * (0.5 * s * s - 2.0 * b * b * s.ln() - b.powi(4) / (2.0 * s * s));
    let (vt, integral) = if r >= a {
        (c * (r - b * b / r), g2(b) - g2(r))
    } else {
        (vm * r / a, g2(b) - g2(a) + vm * vm / (2.0 * a * a) * (a * a - r * r))
    };
    (vt, 1.0 - (gamma - 1.0) / gamma * integral)
}

pub fn euler2d_case(kind: CaseKind, k: usize, mx: usize, my: usize, params: &CaseParams) -> Result<Setup<Euler2d, 4>> {
    let law = Euler2d::default();
    let g = law.gamma;
    let prim_to_cons = move |p: [f64; 4]| Euler2d { gamma: g }.from_primitive(&p);
    match kind {
        CaseKind::Vortex => {
            let mesh = Mesh::rect(k, mx, my, (-10.0, 10.0), (-10.0, 10.0))?;
            let eps = params.vortex_strength;
            let wrap = |s: f64| (s + 10.0).rem_euclid(20.0) - 10.0;
            let exact: ExactFn<4> = Arc::new(move |x, y, t| {
                prim_to_cons(isentropic_vortex(g, eps, wrap(x - t), wrap(y - t)))
            });
            let initial = mesh.sample(|x, y| exact(x, y, 0.0));
            Ok(Setup {
                law,
                mesh,
                bc: Boundaries::periodic(),
                initial,
                exact: Some(exact),
            })
        }
        CaseKind::Riemann2d | CaseKind::RiemannMach => {
            if kind == CaseKind::RiemannMach && !(params.mach > 0.0 && params.mach.is_finite()) {
                return Err(Error::config(format!("invalid Mach number {}", params.mach)));
            }
            let v = if kind == CaseKind::Riemann2d {
                RIEMANN_STATES
            } else {
                riemann_mach_states(g, params.mach)
            };
            let mesh = Mesh::rect(k, mx, my, (0.0, 1.0), (0.0, 1.0))?;
            let initial = mesh.sample(|x, y| {
                let q = match (x >= 0.8, y >= 0.8) {
                    (true, true) => 0,
                    (false, true) => 1,
                    (false, false) => 2,
                    (true, false) => 3,
                };
                prim_to_cons(v[q])
            });
            Ok(Setup {
                law,
                mesh,
                bc: Boundaries::uniform(Boundary::Outflow),
                initial,
                exact: None,
            })
        }
        CaseKind::DoubleMach => {
            let mesh = Mesh::rect(k, mx, my, (0.0, 4.0), (0.0, 1.0))?;
            let post = prim_to_cons([8.0, 8.25 * (PI / 6.0).cos(), -8.25 * (PI / 6.0).sin(), 116.5]);
            let pre = prim_to_cons([1.4, 0.0, 0.0, 1.0]);
            let x0 = 1.0 / 6.0;
            let s3 = 3f64.sqrt();
            let initial = mesh.sample(|x, y| if x < x0 + y / s3 { post } else { pre });
            let wall = law.clone();
            let bottom: Boundary<4> = Boundary::Custom(Arc::new(move |p: GhostPoint, m: &[f64; 4]| {
                if p.x < x0 {
                    post
                } else {
                    wall.reflect(m, crate::physics::Axis::Y)
                }
            }));
            let top: Boundary<4> = Boundary::Custom(Arc::new(move |p: GhostPoint, _m: &[f64; 4]| {
                if p.x < x0 + (1.0 + 20.0 * p.t) / s3 {
                    post
                } else {
                    pre
                }
            }));
            Ok(Setup {
                law,
                mesh,
                bc: Boundaries {
                    left: Boundary::Inflow(post),
                    right: Boundary::Outflow,
                    bottom,
                    top,
                },
                initial,
                exact: None,
            })
        }
        CaseKind::ShockVortex => {
            let mesh = Mesh::rect(k, mx, my, (0.0, 2.0), (0.0, 1.0))?;
            let ms = params.shock_mach;
            let c_inf = g.sqrt();
            let up = [1.0, ms * c_inf, 0.0, 1.0];
            // stationary normal shock
            let m2 = ms * ms;
            let rho_d = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
            let p_d = 1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0);
            let down = [rho_d, up[1] / rho_d, 0.0, p_d];
            let vm = params.vortex_mach * c_inf;
            let (xc, yc) = params.vortex_center;
            let initial = mesh.sample(|x, y| {
                if x >= 0.5 {
                    return prim_to_cons(down);
                }
                let (dx, dy) = (x - xc, y - yc);
                let r = (dx * dx + dy * dy).sqrt();
                let (vt, temp) = composite_vortex(g, vm, r);
                let rho = temp.powf(1.0 / (g - 1.0));
                let (sx, sy) = if r > 0.0 { (-dy / r, dx / r) } else { (0.0, 0.0) };
                prim_to_cons([rho, up[1] + vt * sx, vt * sy, rho * temp])
            });
            Ok(Setup {
                law,
                mesh,
                bc: Boundaries {
                    left: Boundary::Inflow(prim_to_cons(up)),
                    right: Boundary::Outflow,
                    bottom: Boundary::Wall,
                    top: Boundary::Wall,
                },
                initial,
                exact: None,
            })
        }
        other => Err(Error::config(format!("case {other} is not a 2D Euler problem"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sod_initial_states() {
        let s = euler1d_case(CaseKind::Sod, 4, 40).unwrap();
        let p = s.law.to_primitive(&s.initial[12]);
        let (x, _) = s.mesh.positions()[12];
        assert!(x < 0.5);
        assert_eq!(p, [1.0, 0.0, 1.0]);
        let e = s.exact.unwrap()(0.25, 0.0, 0.0);
        assert_eq!(s.law.to_primitive(&e), [1.0, 0.0, 1.0]);
        assert_eq!(s.initial.len(), 200);
    }

    #[test]
    fn vortex_core_temperature() {
        let v = isentropic_vortex(1.4, 5.0, 0.0, 0.0);
        let dt = -(0.4 * 25.0) / (8.0 * 1.4 * PI * PI) * 1f64.exp();
        assert!((v[3] / v[0] - (1.0 + dt)).abs() < 1e-15);
        assert_eq!((v[1], v[2]), (1.0, 1.0));
        // entropy is uniform
        let w = isentropic_vortex(1.4, 5.0, 0.7, -1.3);
        assert!((w[3] / w[0].powf(1.4) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mach_family_reproduces_table() {
        let v = riemann_mach_states(1.4, 3.145);
        for q in 0..4 {
            for c in 0..4 {
                let rel = (v[q][c] - RIEMANN_STATES[q][c]).abs() / RIEMANN_STATES[q][c].abs().max(1.0);
                assert!(rel < 2e-3, "V{} comp {c}: {} vs {}", q + 1, v[q][c], RIEMANN_STATES[q][c]);
            }
        }
    }

    #[test]
    fn composite_vortex_continuity() {
        let vm = 0.9 * 1.4f64.sqrt();
        let (v1, t1) = composite_vortex(1.4, vm, 0.075 - 1e-12);
        let (v2, t2) = composite_vortex(1.4, vm, 0.075 + 1e-12);
        assert!((v1 - v2).abs() < 1e-9 && (t1 - t2).abs() < 1e-9);
        assert!((v1 - vm).abs() < 1e-9);
        let (v3, t3) = composite_vortex(1.4, vm, 0.175 - 1e-12);
        assert!(v3.abs() < 1e-9 && (t3 - 1.0).abs() < 1e-9);
        assert!(composite_vortex(1.4, vm, 0.0).1 < 1.0);
    }

    #[test]
    fn case_names_round_trip() {
        for c in CaseKind::ALL {
            assert_eq!(CaseKind::parse(c.name()).unwrap(), c);
        }
        assert!(CaseKind::parse("nope").is_err());
    }
}
