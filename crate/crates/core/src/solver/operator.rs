use crate::error::{Error, Result};
use crate::limiter::{line_indicator, HybridConfig, ModalIndicator};
use crate::mesh::{gather_line, gather_tags, Boundaries, Mesh};
use crate::parallel::{for_each_chunk, map_indices, ExecMode};
use crate::physics::{Axis, ConservationLaw};
use crate::schemes::{InterpConfig, LineOperator, LineScratch, OperatorTables, SchemeKind};

/// Full semi-discretisation: law, grid, boundaries and operator tables.
#[derive(Debug, Clone)]
pub struct Discretization<L, const N: usize> {
    pub law: L,
    pub mesh: Mesh,
    pub bc: Boundaries<N>,
    pub tables: OperatorTables,
    pub indicator: ModalIndicator,
    pub interp: InterpConfig,
    pub exec: ExecMode,
}

struct SweepScratch<const N: usize> {
    states: Vec<[f64; N]>,
    tags: Vec<SchemeKind>,
    line: LineScratch<N>,
}

impl<const N: usize> SweepScratch<N> {
    fn new() -> Self {
        Self {
            states: Vec::new(),
            tags: Vec::new(),
            line: LineScratch::default(),
        }
    }
}

impl<L: ConservationLaw<N>, const N: usize> Discretization<L, N> {
    pub fn new(law: L, mesh: Mesh, bc: Boundaries<N>, interp: InterpConfig, exec: ExecMode) -> Result<Self> {
        bc.validate(&mesh)?;
        let tables = OperatorTables::new(mesh.degree())?;
        let indicator = ModalIndicator::new(&tables.nodes);
        Ok(Self {
            law,
            mesh,
            bc,
            tables,
            indicator,
            interp,
            exec,
        })
    }

    pub fn axes(&self) -> &'static [Axis] {
        if self.mesh.dim == 2 {
            &[Axis::X, Axis::Y]
        } else {
            &[Axis::X]
        }
    }

    fn width(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.mesh.hx(),
            Axis::Y => self.mesh.hy(),
        }
    }

    /// `du/dt` at every solution point for the given per-cell schemes.
    pub fn residual(&self, u: &[[f64; N]], tags: &[SchemeKind], t: f64, out: &mut [[f64; N]]) -> Result<()> {
        let mesh = &self.mesh;
        let np = mesh.np();
        for (pass, &axis) in self.axes().iter().enumerate() {
            let n = mesh.line_cells(axis);
            let len = n * np;
            let mut lines = vec![[0.0; N]; mesh.n_lines(axis) * len];
            let op = LineOperator::new(&self.law, &self.tables, self.interp, axis);
            let scale = 2.0 / self.width(axis);
            for_each_chunk(self.exec, &mut lines, len, SweepScratch::new, |line, chunk, s| {
                gather_line(mesh, &self.bc, &self.law, u, axis, line, t, &mut s.states);
                gather_tags(mesh, &self.bc, tags, axis, line, &mut s.tags);
                op.residual(&s.states, &s.tags, scale, chunk, false, &mut s.line)
                    .map_err(|e| e.map_cell(|c| mesh.line_cell(axis, line, c)))
            })?;
            for (line, chunk) in lines.chunks(len).enumerate() {
                for c in 0..n {
                    for q in 0..np {
                        let dst = &mut out[mesh.line_index(axis, line, c, q)];
                        let src = &chunk[c * np + q];
                        if pass == 0 {
                            *dst = *src;
                        } else {
                            for k in 0..N {
                                dst[k] += src[k];
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Indicator of every cell, the maximum over its lines in both directions.
    pub fn indicator_field(&self, u: &[[f64; N]], t: f64) -> Vec<f64> {
        let mesh = &self.mesh;
        let mut ei = vec![0.0; mesh.n_cells()];
        for &axis in self.axes() {
            let n = mesh.line_cells(axis);
            let per_line = map_indices(self.exec, mesh.n_lines(axis), |line| {
                let mut states = Vec::new();
                gather_line(mesh, &self.bc, &self.law, u, axis, line, t, &mut states);
                let mut vals = vec![0.0; n];
                line_indicator(&self.law, &self.indicator, &states, &mut vals);
                vals
            });
            for (line, vals) in per_line.iter().enumerate() {
                for (c, &v) in vals.iter().enumerate() {
                    let cell = mesh.line_cell(axis, line, c);
                    if v > ei[cell] {
                        ei[cell] = v;
                    }
                }
            }
        }
        ei
    }

    /// Indicator values and the hybrid assignment they induce.
    pub fn select(&self, u: &[[f64; N]], t: f64, cfg: &HybridConfig) -> (Vec<f64>, Vec<SchemeKind>) {
        let ei = self.indicator_field(u, t);
        let tags = ei.iter().map(|&e| cfg.select(e)).collect();
        (ei, tags)
    }

    /// `Σ_axis max|λ| / h` over the field.
    pub fn wave_rate(&self, u: &[[f64; N]]) -> f64 {
        self.axes()
            .iter()
            .map(|&axis| {
                let s = u
                    .iter()
                    .map(|v| self.law.max_wave_speed(v, axis))
                    .fold(0.0, f64::max);
                s / self.width(axis)
            })
            .sum()
    }

    /// First non-physical node in storage order.
    pub fn check_field(&self, u: &[[f64; N]]) -> Result<()> {
        let per = self.mesh.nodes_per_cell();
        for (i, v) in u.iter().enumerate() {
            if let Err(d) = self.law.check_state(v) {
                return Err(Error::positivity(i / per, Some(i % per), d));
            }
        }
        Ok(())
    }

    /// Uniform assignment, sized for this grid.
    pub fn uniform_tags(&self, kind: SchemeKind) -> Vec<SchemeKind> {
        vec![kind; self.mesh.n_cells()]
    }
}
