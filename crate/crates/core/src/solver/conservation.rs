use serde::{Deserialize, Serialize};

use crate::mesh::Mesh;

/// `Σ_cells Σ_l Σ_m w_l w_m q J` with the cell Jacobian `J`.
pub fn integral(mesh: &Mesh, q: impl Fn(usize) -> f64) -> f64 {
    let w = &mesh.nodes.gauss_weights;
    let np = mesh.np();
    let per = mesh.nodes_per_cell();
    let jac = if mesh.dim == 2 {
        0.25 * mesh.hx() * mesh.hy()
    } else {
        0.5 * mesh.hx()
    };
    let mut total = 0.0;
    for c in 0..mesh.n_cells() {
        let mut s = 0.0;
        for j in 0..per {
            let wl = w[j % np];
            let wm = if mesh.dim == 2 { w[j / np] } else { 1.0 };
            s += wl * wm * q(c * per + j);
        }
        total += s * jac;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservationSample {
    pub t: f64,
    pub integral: f64,
    /// `(INT(ρ) − INT(ρ₀)) / INT(ρ₀)`.
    pub relative: f64,
}

/// Drift of the density integral over a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservationReport {
    /// False for non-periodic domains, where boundary fluxes change the total.
    pub applicable: bool,
    pub initial: f64,
    pub samples: Vec<ConservationSample>,
}

impl ConservationReport {
    pub fn new(applicable: bool, initial: f64) -> Self {
        Self {
            applicable,
            initial,
            samples: vec![ConservationSample {
                t: 0.0,
                integral: initial,
                relative: 0.0,
            }],
        }
    }

    pub fn record(&mut self, t: f64, integral: f64) {
        self.samples.push(ConservationSample {
            t,
            integral,
            relative: (integral - self.initial) / self.initial,
        });
    }

    /// `max |⟨ρ⟩|` over the samples, `None` when not applicable.
    pub fn max_abs(&self) -> Option<f64> {
        self.applicable
            .then(|| self.samples.iter().map(|s| s.relative.abs()).fold(0.0, f64::max))
    }
}
