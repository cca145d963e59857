//! Modal-decay troubled-cell indicator on the extended stencil and the
//! partition rule choosing each cell's scheme.

use serde::{Deserialize, Serialize};

use crate::basis::{gauss_legendre_newton, lagrange_weights, legendre, Matrix, NodeSet};
use crate::error::{Error, Result};
use crate::physics::ConservationLaw;
use crate::schemes::SchemeKind;

/// Default modal-decay exponent.
pub const DECAY_B: f64 = 1.8;

/// `T(N) = a · 10^{−b (N+1)^{1/4}}`.
pub fn threshold_general(a: f64, n: usize, b: f64) -> f64 {
    a * 10f64.powf(-b * ((n + 1) as f64).powf(0.25))
}

/// Threshold for the fifth-order scheme, `N = 6`.
pub fn threshold(a: f64) -> f64 {
    threshold_general(a, 6, DECAY_B)
}

/// Partition vector and threshold parameter of the hybrid scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridConfig {
    pub a: f64,
    pub dv: [f64; 3],
}

impl HybridConfig {
    pub fn new(a: f64, dv: [f64; 3]) -> Result<Self> {
        if !(dv[0] <= dv[1] && dv[1] <= dv[2]) {
            return Err(Error::config(format!(
                "partition vector must be ordered, got {dv:?}"
            )));
        }
        if dv.iter().any(|s| !(0.0..=1.0).contains(s)) || a <= 0.0 {
            return Err(Error::config(format!(
                "invalid hybrid parameters a={a}, dv={dv:?}"
            )));
        }
        Ok(Self { a, dv })
    }

    /// All four schemes, `dv = (c(a), 0.05, 0.1)`.
    pub fn full(a: f64) -> Self {
        Self {
            a,
            dv: [threshold(a), 0.05, 0.1],
        }
    }

    /// CPR and C2NNW2 only, `dv = (c(a), c(a), c(a))`.
    pub fn cpr_c2nnw2(a: f64) -> Self {
        let c = threshold(a);
        Self { a, dv: [c, c, c] }
    }

    pub fn select(&self, ei: f64) -> SchemeKind {
        select_scheme(ei, &self.dv)
    }
}

/// Partition rule: CPR up to `S1`, then C5NNW5, C2NNW5 and C2NNW2.
#[inline]
pub fn select_scheme(ei: f64, dv: &[f64; 3]) -> SchemeKind {
    if ei <= dv[0] {
        SchemeKind::Cpr
    } else if ei <= dv[1] {
        SchemeKind::C5Nnw5
    } else if ei <= dv[2] {
        SchemeKind::C2Nnw5
    } else {
        SchemeKind::C2Nnw2
    }
}

/// Checked variant rejecting unordered partition vectors.
pub fn select_scheme_checked(ei: f64, dv: &[f64; 3]) -> Result<SchemeKind> {
    if !(dv[0] <= dv[1] && dv[1] <= dv[2]) {
        return Err(Error::config(format!("partition vector must be ordered, got {dv:?}")));
    }
    Ok(select_scheme(ei, dv))
}

/// Nodal-to-modal transform on the extended stencil `(−1, sp…, +1)`.
#[derive(Debug, Clone)]
pub struct ModalIndicator {
    pub nodes: Vec<f64>,
    modal: Matrix,
}

impl ModalIndicator {
    pub fn new(nodes: &NodeSet) -> Self {
        let mut x = vec![-1.0];
        x.extend_from_slice(&nodes.solution_points);
        x.push(1.0);
        let n = x.len();
        let (xq, wq) = gauss_legendre_newton(n);
        let mut modal = Matrix::zeros(n, n);
        for (&xqq, &wqq) in xq.iter().zip(&wq) {
            let lag = lagrange_weights(&x, xqq);
            for j in 0..n {
                let pj = legendre(j, xqq).0;
                let f = 0.5 * (2 * j + 1) as f64 * wqq * pj;
                for (i, li) in lag.iter().enumerate() {
                    modal.data[j * n + i] += f * li;
                }
            }
        }
        Self { nodes: x, modal }
    }

    /// Polynomial degree `N` of the extended interpolant.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn modal_coefficients(&self, eps: &[f64]) -> Vec<f64> {
        self.modal.mul_vec(eps)
    }

    /// `max(m_N² / Σ_0^N m², m_{N−1}² / Σ_0^{N−1} m²)`, zero for a zero field.
    #[inline]
    pub fn energy_indicator(&self, eps: &[f64]) -> f64 {
        let n = self.nodes.len();
        let mut m = [0.0; 8];
        for j in 0..n {
            let row = self.modal.row(j);
            m[j] = row.iter().zip(eps).map(|(a, b)| a * b).sum();
        }
        let top = n - 1;
        let lower: f64 = m[..top].iter().map(|v| v * v).sum();
        let total = lower + m[top] * m[top];
        let r1 = if total > 0.0 { m[top] * m[top] / total } else { 0.0 };
        let r2 = if lower > 0.0 { m[top - 1] * m[top - 1] / lower } else { 0.0 };
        r1.max(r2)
    }
}

/// Indicator of every interior cell of a padded line (one ghost per side).
pub fn line_indicator<L: ConservationLaw<N>, const N: usize>(
    law: &L,
    ind: &ModalIndicator,
    states: &[[f64; N]],
    out: &mut [f64],
) {
    let np = ind.nodes.len() - 2;
    let n = states.len() / np - 2;
    let mut eps = [0.0; 8];
    for c in 1..=n {
        let base = c * np;
        eps[0] = law.interface_average(&states[base - 1], &states[base]);
        for l in 0..np {
            eps[l + 1] = law.indicator_quantity(&states[base + l]);
        }
        eps[np + 1] = law.interface_average(&states[base + np - 1], &states[base + np]);
        out[c - 1] = ind.energy_indicator(&eps[..np + 2]);
    }
}
