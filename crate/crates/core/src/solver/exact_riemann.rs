//! Exact solution of the 1D Riemann problem for an ideal gas, used as the
//! reference for shock-tube errors.

use crate::error::{Error, Result};

/// Primitive state `(ρ, u, p)`.
pub type Prim = [f64; 3];

#[derive(Debug, Clone, Copy)]
pub struct ExactRiemann {
    pub gamma: f64,
    pub left: Prim,
    pub right: Prim,
    /// Star-region pressure and velocity.
    pub p_star: f64,
    pub u_star: f64,
}

impl ExactRiemann {
    pub fn new(gamma: f64, left: Prim, right: Prim) -> Result<Self> {
        let cl = (gamma * left[2] / left[0]).sqrt();
        let cr = (gamma * right[2] / right[0]).sqrt();
        if 2.0 / (gamma - 1.0) * (cl + cr) <= right[1] - left[1] {
            return Err(Error::Numeric("vacuum generated by the initial data".into()));
        }
        // two-rarefaction guess, then Newton iteration on the pressure function
        let z = (gamma - 1.0) / (2.0 * gamma);
        let mut p = ((cl + cr - 0.5 * (gamma - 1.0) * (right[1] - left[1]))
            / (cl / left[2].powf(z) + cr / right[2].powf(z)))
        .powf(1.0 / z)
        .max(1e-12);
        let mut converged = false;
        for _ in 0..100 {
            let (fl, dl) = pressure_function(gamma, p, left);
            let (fr, dr) = pressure_function(gamma, p, right);
            let f = fl + fr + right[1] - left[1];
            let next = (p - f / (dl + dr)).max(1e-14);
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < 1e-12 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric("exact Riemann iteration did not converge".into()));
        }
        let (fl, _) = pressure_function(gamma, p, left);
        let (fr, _) = pressure_function(gamma, p, right);
        Ok(Self {
            gamma,
            left,
            right,
            p_star: p,
            u_star: 0.5 * (left[1] + right[1]) + 0.5 * (fr - fl),
        })
    }

    /// Solution at similarity coordinate `s = (x − x₀)/t`.
    pub fn sample(&self, s: f64) -> Prim {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        let gm = (g - 1.0) / (g + 1.0);
        if s <= us {
            let [rho, u, p] = self.left;
            let c = (g * p / rho).sqrt();
            if ps > p {
                let ratio = ps / p;
                let sl = u - c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
                if s <= sl {
                    self.left
                } else {
                    [rho * (ratio + gm) / (gm * ratio + 1.0), us, ps]
                }
            } else {
                let head = u - c;
                let cs = c * (ps / p).powf((g - 1.0) / (2.0 * g));
                let tail = us - cs;
                if s <= head {
                    self.left
                } else if s >= tail {
                    [rho * (ps / p).powf(1.0 / g), us, ps]
                } else {
                    let k = 2.0 / (g + 1.0) + gm / c * (u - s);
                    [rho * k.powf(2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * u + s), p * k.powf(2.0 * g / (g - 1.0))]
                }
            }
        } else {
            let [rho, u, p] = self.right;
            let c = (g * p / rho).sqrt();
            if ps > p {
                let ratio = ps / p;
                let sr = u + c * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
                if s >= sr {
                    self.right
                } else {
                    [rho * (ratio + gm) / (gm * ratio + 1.0), us, ps]
                }
            } else {
                let head = u + c;
                let cs = c * (ps / p).powf((g - 1.0) / (2.0 * g));
                let tail = us + cs;
                if s >= head {
                    self.right
                } else if s <= tail {
                    [rho * (ps / p).powf(1.0 / g), us, ps]
                } else {
                    let k = 2.0 / (g + 1.0) - gm / c * (u - s);
                    [rho * k.powf(2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * u + s), p * k.powf(2.0 * g / (g - 1.0))]
                }
            }
        }
    }

    /// Solution at position `x` and time `t > 0` for a jump initially at `x0`.
    pub fn at(&self, x: f64, x0: f64, t: f64) -> Prim {
        if t <= 0.0 {
            return if x < x0 { self.left } else { self.right };
        }
        self.sample((x - x0) / t)
    }
}

fn pressure_function(g: f64, p: f64, k: Prim) -> (f64, f64) {
    let [rho, _, pk] = k;
    let c = (g * pk / rho).sqrt();
    if p > pk {
        let a = 2.0 / ((g + 1.0) * rho);
        let b = (g - 1.0) / (g + 1.0) * pk;
        let q = (a / (p + b)).sqrt();
        ((p - pk) * q, q * (1.0 - 0.5 * (p - pk) / (b + p)))
    } else {
        let r = p / pk;
        (
            2.0 * c / (g - 1.0) * (r.powf((g - 1.0) / (2.0 * g)) - 1.0),
            1.0 / (rho * c) * r.powf(-(g + 1.0) / (2.0 * g)),
        )
    }
}
