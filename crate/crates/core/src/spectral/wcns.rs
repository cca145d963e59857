//! Linear weighted compact nonlinear schemes on a uniform periodic grid,
//! used only as reference operators for the spectra.
//!
//! Each is written with `points_per_cell` nodes grouped into cells so that it
//! fits the same block-circulant machinery as the cell schemes.

use crate::error::{Error, Result};
use crate::schemes::LinearOperator;

/// Third-order scheme: upwind edge interpolation and the fourth-order
/// hybrid edge/node difference `4/3 Δ½ − 1/6 Δ₁`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Wcns3;

/// Fifth-order scheme: upwind five-point edge interpolation and the
/// sixth-order hybrid difference `3/2 Δ½ − 3/10 Δ₁ + 1/30 Δ₃⁄₂`.
///
/// The difference coefficients are the standard sixth-order ones of the
/// explicit hybrid cell-edge/cell-node operator; they follow from the
/// Taylor conditions on the three differences.
#[derive(Debug, Clone, Copy, Default)]
pub struct Wcns5;

const EDGE3: [f64; 3] = [-1.0 / 8.0, 6.0 / 8.0, 3.0 / 8.0];
const EDGE5: [f64; 5] = [3.0 / 128.0, -20.0 / 128.0, 90.0 / 128.0, 60.0 / 128.0, -5.0 / 128.0];
pub const HYBRID6: [f64; 3] = [1.5, -0.3, 1.0 / 30.0];

fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

/// Left state at edge `i + ½` from the stencil centred on node `i`.
fn edge(u: &[f64], i: isize, coeffs: &[f64]) -> f64 {
    let lo = i - (coeffs.len() as isize - 1) / 2;
    coeffs
        .iter()
        .enumerate()
        .map(|(q, c)| c * u[wrap(lo + q as isize, u.len())])
        .sum()
}

fn check(u: &[f64], p: usize, cells: usize) -> Result<()> {
    if u.len() != p * cells || cells == 0 {
        return Err(Error::config(format!(
            "expected {} values for {cells} cells, got {}",
            p * cells,
            u.len()
        )));
    }
    Ok(())
}

impl Wcns3 {
    pub const POINTS: usize = 3;
}

impl Wcns5 {
    pub const POINTS: usize = 5;
}

impl LinearOperator for Wcns3 {
    fn points_per_cell(&self) -> usize {
        Self::POINTS
    }

    fn apply(&self, u: &[f64], cells: usize) -> Result<Vec<f64>> {
        check(u, Self::POINTS, cells)?;
        let n = u.len();
        let dx = 1.0 / Self::POINTS as f64;
        Ok((0..n as isize)
            .map(|i| {
                let de = edge(u, i, &EDGE3) - edge(u, i - 1, &EDGE3);
                let dn = u[wrap(i + 1, n)] - u[wrap(i - 1, n)];
                -(4.0 / 3.0 * de - dn / 6.0) / dx
            })
            .collect())
    }

    fn name(&self) -> String {
        "WCNS3".into()
    }
}

impl LinearOperator for Wcns5 {
    fn points_per_cell(&self) -> usize {
        Self::POINTS
    }

    fn apply(&self, u: &[f64], cells: usize) -> Result<Vec<f64>> {
        check(u, Self::POINTS, cells)?;
        let n = u.len();
        let dx = 1.0 / Self::POINTS as f64;
        let [b1, b2, b3] = HYBRID6;
        Ok((0..n as isize)
            .map(|i| {
                let d1 = edge(u, i, &EDGE5) - edge(u, i - 1, &EDGE5);
                let d2 = u[wrap(i + 1, n)] - u[wrap(i - 1, n)];
                let d3 = edge(u, i + 1, &EDGE5) - edge(u, i - 2, &EDGE5);
                -(b1 * d1 + b2 * d2 + b3 * d3) / dx
            })
            .collect())
    }

    fn name(&self) -> String {
        "WCNS5".into()
    }
}
