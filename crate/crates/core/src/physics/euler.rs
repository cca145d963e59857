use super::{Axis, CharBasis, ConservationLaw};

/// Ratio of specific heats used by every Euler case.
pub const GAMMA: f64 = 1.4;

/// Roe-averaged quantities between two states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeAverage {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub h: f64,
    pub c: f64,
    pub p: f64,
}

impl RoeAverage {
    /// Averaged indicator quantity `aver(ρ)·aver(p)`.
    pub fn epsilon(&self) -> f64 {
        self.rho * self.p
    }
}

/// Roe average of two primitive states `(ρ, u, v, p)`.
pub fn roe_average(gamma: f64, a: [f64; 4], b: [f64; 4]) -> RoeAverage {
    let (ra, rb) = (a[0].sqrt(), b[0].sqrt());
    let inv = 1.0 / (ra + rb);
    let h_of = |s: [f64; 4]| gamma / (gamma - 1.0) * s[3] / s[0] + 0.5 * (s[1] * s[1] + s[2] * s[2]);
    let u = (ra * a[1] + rb * b[1]) * inv;
    let v = (ra * a[2] + rb * b[2]) * inv;
    let h = (ra * h_of(a) + rb * h_of(b)) * inv;
    let rho = ra * rb;
    let c2 = ((gamma - 1.0) * (h - 0.5 * (u * u + v * v))).max(1e-300);
    RoeAverage {
        rho,
        u,
        v,
        h,
        c: c2.sqrt(),
        p: rho * c2 / gamma,
    }
}

fn validate(rho: f64, p: f64, finite: bool) -> std::result::Result<(), String> {
    if !finite {
        Err("non-finite state".into())
    } else if rho <= 0.0 {
        Err(format!("density {rho:e} is not positive"))
    } else if p <= 0.0 {
        Err(format!("pressure {p:e} is not positive"))
    } else {
        Ok(())
    }
}

/// One-dimensional Euler equations, `U = (ρ, ρu, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler1d {
    pub gamma: f64,
}

impl Default for Euler1d {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

impl Euler1d {
    #[inline]
    pub fn pressure(&self, u: &[f64; 3]) -> f64 {
        (self.gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
    }

    fn prim4(&self, u: &[f64; 3]) -> [f64; 4] {
        [u[0], u[1] / u[0], 0.0, self.pressure(u)]
    }
}

impl ConservationLaw<3> for Euler1d {
    fn name(&self) -> &'static str {
        "euler1d"
    }

    #[inline]
    fn flux(&self, u: &[f64; 3], _axis: Axis) -> [f64; 3] {
        let vel = u[1] / u[0];
        let p = self.pressure(u);
        [u[1], u[1] * vel + p, (u[2] + p) * vel]
    }

    #[inline]
    fn max_wave_speed(&self, u: &[f64; 3], _axis: Axis) -> f64 {
        let vel = u[1] / u[0];
        let p = self.pressure(u);
        vel.abs() + (self.gamma * p / u[0]).sqrt()
    }

    fn check_state(&self, u: &[f64; 3]) -> std::result::Result<(), String> {
        validate(u[0], self.pressure(u), u.iter().all(|x| x.is_finite()))
    }

    fn to_primitive(&self, u: &[f64; 3]) -> [f64; 3] {
        [u[0], u[1] / u[0], self.pressure(u)]
    }

    fn from_primitive(&self, v: &[f64; 3]) -> [f64; 3] {
        [
            v[0],
            v[0] * v[1],
            v[2] / (self.gamma - 1.0) + 0.5 * v[0] * v[1] * v[1],
        ]
    }

    fn characteristic_basis(&self, a: &[f64; 3], b: &[f64; 3], _axis: Axis) -> CharBasis<3> {
        let r = roe_average(self.gamma, self.prim4(a), self.prim4(b));
        let (u, h, c) = (r.u, r.h, r.c);
        let b1 = (self.gamma - 1.0) / (c * c);
        let b2 = 0.5 * b1 * u * u;
        let right = [
            [1.0, 1.0, 1.0],
            [u - c, u, u + c],
            [h - u * c, 0.5 * u * u, h + u * c],
        ];
        let left = [
            [0.5 * (b2 + u / c), 0.5 * (-b1 * u - 1.0 / c), 0.5 * b1],
            [1.0 - b2, b1 * u, -b1],
            [0.5 * (b2 - u / c), 0.5 * (-b1 * u + 1.0 / c), 0.5 * b1],
        ];
        CharBasis { left, right }
    }

    fn indicator_quantity(&self, u: &[f64; 3]) -> f64 {
        u[0] * self.pressure(u)
    }

    fn interface_average(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        roe_average(self.gamma, self.prim4(a), self.prim4(b)).epsilon()
    }

    fn reflect(&self, u: &[f64; 3], _axis: Axis) -> [f64; 3] {
        [u[0], -u[1], u[2]]
    }
}

/// Two-dimensional Euler equations, `U = (ρ, ρu, ρv, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler2d {
    pub gamma: f64,
}

impl Default for Euler2d {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

impl Euler2d {
    #[inline]
    pub fn pressure(&self, u: &[f64; 4]) -> f64 {
        (self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
    }

    fn prim4(&self, u: &[f64; 4]) -> [f64; 4] {
        [u[0], u[1] / u[0], u[2] / u[0], self.pressure(u)]
    }
}

impl ConservationLaw<4> for Euler2d {
    fn name(&self) -> &'static str {
        "euler2d"
    }

    #[inline]
    fn flux(&self, u: &[f64; 4], axis: Axis) -> [f64; 4] {
        let p = self.pressure(u);
        match axis {
            Axis::X => {
                let vel = u[1] / u[0];
                [u[1], u[1] * vel + p, u[2] * vel, (u[3] + p) * vel]
            }
            Axis::Y => {
                let vel = u[2] / u[0];
                [u[2], u[1] * vel, u[2] * vel + p, (u[3] + p) * vel]
            }
        }
    }

    #[inline]
    fn max_wave_speed(&self, u: &[f64; 4], axis: Axis) -> f64 {
        let un = match axis {
            Axis::X => u[1] / u[0],
            Axis::Y => u[2] / u[0],
        };
        un.abs() + (self.gamma * self.pressure(u) / u[0]).sqrt()
    }

    fn check_state(&self, u: &[f64; 4]) -> std::result::Result<(), String> {
        validate(u[0], self.pressure(u), u.iter().all(|x| x.is_finite()))
    }

    fn to_primitive(&self, u: &[f64; 4]) -> [f64; 4] {
        self.prim4(u)
    }

    fn from_primitive(&self, v: &[f64; 4]) -> [f64; 4] {
        [
            v[0],
            v[0] * v[1],
            v[0] * v[2],
            v[3] / (self.gamma - 1.0) + 0.5 * v[0] * (v[1] * v[1] + v[2] * v[2]),
        ]
    }

    fn characteristic_basis(&self, a: &[f64; 4], b: &[f64; 4], axis: Axis) -> CharBasis<4> {
        let r = roe_average(self.gamma, self.prim4(a), self.prim4(b));
        let (nx, ny) = axis.normal();
        let (u, v, h, c) = (r.u, r.v, r.h, r.c);
        let un = u * nx + v * ny;
        let ut = -u * ny + v * nx;
        let q2 = u * u + v * v;
        let b1 = (self.gamma - 1.0) / (c * c);
        let b2 = 0.5 * b1 * q2;
        let right = [
            [1.0, 1.0, 0.0, 1.0],
            [u - c * nx, u, -ny, u + c * nx],
            [v - c * ny, v, nx, v + c * ny],
            [h - c * un, 0.5 * q2, ut, h + c * un],
        ];
        let left = [
            [
                0.5 * (b2 + un / c),
                0.5 * (-b1 * u - nx / c),
                0.5 * (-b1 * v - ny / c),
                0.5 * b1,
            ],
            [1.0 - b2, b1 * u, b1 * v, -b1],
            [-ut, -ny, nx, 0.0],
            [
                0.5 * (b2 - un / c),
                0.5 * (-b1 * u + nx / c),
                0.5 * (-b1 * v + ny / c),
                0.5 * b1,
            ],
        ];
        CharBasis { left, right }
    }

    fn indicator_quantity(&self, u: &[f64; 4]) -> f64 {
        u[0] * self.pressure(u)
    }

    fn interface_average(&self, a: &[f64; 4], b: &[f64; 4]) -> f64 {
        roe_average(self.gamma, self.prim4(a), self.prim4(b)).epsilon()
    }

    fn reflect(&self, u: &[f64; 4], axis: Axis) -> [f64; 4] {
        match axis {
            Axis::X => [u[0], -u[1], u[2], u[3]],
            Axis::Y => [u[0], u[1], -u[2], u[3]],
        }
    }
}
