//! Uniform Cartesian grids of tensor-product cells, boundary conditions and
//! the gather of padded solution-point lines used by the residual sweeps.

use std::fmt;
use std::sync::Arc;

use crate::basis::{CellMap, NodeSet};
use crate::error::{Error, Result};
use crate::physics::{Axis, ConservationLaw};
use crate::schemes::SchemeKind;

/// Uniform grid of `mx × my` cells with `K + 1` solution points per
/// direction. One-dimensional grids have `my = 1` and a single node row.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub dim: usize,
    pub mx: usize,
    pub my: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nodes: NodeSet,
}

impl Mesh {
    pub fn line(k: usize, mx: usize, x_range: (f64, f64)) -> Result<Self> {
        Self::build(1, k, mx, 1, x_range, (0.0, 1.0))
    }

    pub fn rect(k: usize, mx: usize, my: usize, x_range: (f64, f64), y_range: (f64, f64)) -> Result<Self> {
        Self::build(2, k, mx, my, x_range, y_range)
    }

    fn build(dim: usize, k: usize, mx: usize, my: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        if mx == 0 || my == 0 {
            return Err(Error::config("grid needs at least one cell per direction"));
        }
        if !(x.1 > x.0) || (dim == 2 && !(y.1 > y.0)) {
            return Err(Error::config(format!("empty domain {x:?} x {y:?}")));
        }
        Ok(Self {
            dim,
            mx,
            my,
            x_range: x,
            y_range: y,
            nodes: NodeSet::new(k)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.nodes.degree
    }

    /// Solution points per direction.
    pub fn np(&self) -> usize {
        self.nodes.degree + 1
    }

    /// Node rows per cell: `np` in 2D, one in 1D.
    pub fn npy(&self) -> usize {
        if self.dim == 2 {
            self.np()
        } else {
            1
        }
    }

    pub fn nodes_per_cell(&self) -> usize {
        self.np() * self.npy()
    }

    pub fn n_cells(&self) -> usize {
        self.mx * self.my
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cells() * self.nodes_per_cell()
    }

    /// Degrees of freedom per direction.
    pub fn dofs(&self) -> (usize, usize) {
        (self.mx * self.np(), self.my * self.npy())
    }

    pub fn hx(&self) -> f64 {
        (self.x_range.1 - self.x_range.0) / self.mx as f64
    }

    pub fn hy(&self) -> f64 {
        if self.dim == 2 {
            (self.y_range.1 - self.y_range.0) / self.my as f64
        } else {
            1.0
        }
    }

    #[inline]
    pub fn cell_index(&self, ci: usize, cj: usize) -> usize {
        cj * self.mx + ci
    }

    /// Flat index of node `(l, m)` in cell `(ci, cj)`.
    #[inline]
    pub fn index(&self, ci: usize, cj: usize, l: usize, m: usize) -> usize {
        ((cj * self.mx + ci) * self.npy() + m) * self.np() + l
    }

    pub fn cell_map(&self, ci: usize, cj: usize) -> CellMap {
        let (hx, hy) = (self.hx(), self.hy());
        let x0 = self.x_range.0 + ci as f64 * hx;
        if self.dim == 2 {
            let y0 = self.y_range.0 + cj as f64 * hy;
            CellMap::rect(x0, x0 + hx, y0, y0 + hy)
        } else {
            CellMap::interval(x0, x0 + hx)
        }
    }

    /// Physical coordinates of node `(l, m)` of cell `(ci, cj)`; `y = 0` in 1D.
    pub fn node_position(&self, ci: usize, cj: usize, l: usize, m: usize) -> (f64, f64) {
        let sp = &self.nodes.solution_points;
        let x = self.x_range.0 + (ci as f64 + 0.5 * (sp[l] + 1.0)) * self.hx();
        let y = if self.dim == 2 {
            self.y_range.0 + (cj as f64 + 0.5 * (sp[m] + 1.0)) * self.hy()
        } else {
            0.0
        };
        (x, y)
    }

    /// Every node position in storage order.
    pub fn positions(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.n_nodes());
        for cj in 0..self.my {
            for ci in 0..self.mx {
                for m in 0..self.npy() {
                    for l in 0..self.np() {
                        out.push(self.node_position(ci, cj, l, m));
                    }
                }
            }
        }
        out
    }

    /// Sample `f(x, y)` at every solution point.
    pub fn sample<T>(&self, f: impl Fn(f64, f64) -> T) -> Vec<T> {
        self.positions().into_iter().map(|(x, y)| f(x, y)).collect()
    }

    /// Number of lines swept in direction `axis`.
    pub fn n_lines(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.my * self.npy(),
            Axis::Y => self.mx * self.np(),
        }
    }

    /// Cells along a line in direction `axis`.
    pub fn line_cells(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.mx,
            Axis::Y => self.my,
        }
    }

    /// Flat index of node `q` of cell `c` along line `line` in direction `axis`.
    #[inline]
    pub fn line_index(&self, axis: Axis, line: usize, c: usize, q: usize) -> usize {
        match axis {
            Axis::X => {
                let (cj, m) = (line / self.npy(), line % self.npy());
                self.index(c, cj, q, m)
            }
            Axis::Y => {
                let (ci, l) = (line / self.np(), line % self.np());
                self.index(ci, c, l, q)
            }
        }
    }

    /// Cell index of line-local cell `c`.
    pub fn line_cell(&self, axis: Axis, line: usize, c: usize) -> usize {
        match axis {
            Axis::X => self.cell_index(c, line / self.npy()),
            Axis::Y => self.cell_index(line / self.np(), c),
        }
    }
}

/// Location handed to a custom boundary: the ghost node and the time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhostPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

pub type GhostFn<const N: usize> = Arc<dyn Fn(GhostPoint, &[f64; N]) -> [f64; N] + Send + Sync>;

/// Condition on one side of the domain.
///
/// Ghost cells mirror the adjacent interior cell node by node, so the
/// ghost node nearest the face copies the interior node nearest the face.
#[derive(Clone)]
pub enum Boundary<const N: usize> {
    Periodic,
    /// Zero-gradient extrapolation (mirrored copy).
    Outflow,
    /// Reflecting slip wall.
    Wall,
    /// Fixed conservative state.
    Inflow([f64; N]),
    /// Ghost state from position, time and the mirrored interior state.
    Custom(GhostFn<N>),
}

impl<const N: usize> fmt::Debug for Boundary<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => write!(f, "Periodic"),
            Boundary::Outflow => write!(f, "Outflow"),
            Boundary::Wall => write!(f, "Wall"),
            Boundary::Inflow(s) => write!(f, "Inflow({s:?})"),
            Boundary::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl<const N: usize> Boundary<N> {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic)
    }
}

/// Conditions on the four sides; `bottom` and `top` are unused in 1D.
#[derive(Debug, Clone)]
pub struct Boundaries<const N: usize> {
    pub left: Boundary<N>,
    pub right: Boundary<N>,
    pub bottom: Boundary<N>,
    pub top: Boundary<N>,
}

impl<const N: usize> Boundaries<N> {
    pub fn periodic() -> Self {
        Self::uniform(Boundary::Periodic)
    }

    pub fn uniform(b: Boundary<N>) -> Self {
        Self {
            left: b.clone(),
            right: b.clone(),
            bottom: b.clone(),
            top: b,
        }
    }

    pub fn validate(&self, mesh: &Mesh) -> Result<()> {
        let pairs: &[(&Boundary<N>, &Boundary<N>, &str)] = if mesh.dim == 2 {
            &[(&self.left, &self.right, "x"), (&self.bottom, &self.top, "y")]
        } else {
            &[(&self.left, &self.right, "x")]
        };
        for (a, b, name) in pairs {
            if a.is_periodic() != b.is_periodic() {
                return Err(Error::config(format!("periodic {name} boundaries must be paired")));
            }
            let n = if *name == "x" { mesh.mx } else { mesh.my };
            if a.is_periodic() && n < 3 {
                return Err(Error::config(format!(
                    "need at least 3 cells in periodic direction {name}, got {n}"
                )));
            }
        }
        Ok(())
    }

    /// All sides periodic in every active direction.
    pub fn fully_periodic(&self, mesh: &Mesh) -> bool {
        self.left.is_periodic() && (mesh.dim == 1 || self.bottom.is_periodic())
    }

    fn sides(&self, axis: Axis) -> (&Boundary<N>, &Boundary<N>) {
        match axis {
            Axis::X => (&self.left, &self.right),
            Axis::Y => (&self.bottom, &self.top),
        }
    }
}

/// Copy line `line` of direction `axis` into `buf` with one ghost cell on
/// each end, stored cell-major.
#[allow(clippy::too_many_arguments)]
pub fn gather_line<L: ConservationLaw<N>, const N: usize>(
    mesh: &Mesh,
    bc: &Boundaries<N>,
    law: &L,
    u: &[[f64; N]],
    axis: Axis,
    line: usize,
    t: f64,
    buf: &mut Vec<[f64; N]>,
) {
    let np = mesh.np();
    let n = mesh.line_cells(axis);
    buf.clear();
    buf.resize((n + 2) * np, [0.0; N]);
    for c in 0..n {
        for q in 0..np {
            buf[(c + 1) * np + q] = u[mesh.line_index(axis, line, c, q)];
        }
    }
    let (lo, hi) = bc.sides(axis);
    for (ghost, b, adjacent, wrapped) in [(0usize, lo, 0usize, n - 1), (n + 1, hi, n - 1, 0)] {
        for q in 0..np {
            let dst = ghost * np + q;
            buf[dst] = match b {
                Boundary::Periodic => u[mesh.line_index(axis, line, wrapped, q)],
                Boundary::Inflow(s) => *s,
                _ => {
                    let mirrored = u[mesh.line_index(axis, line, adjacent, np - 1 - q)];
                    match b {
                        Boundary::Outflow => mirrored,
                        Boundary::Wall => law.reflect(&mirrored, axis),
                        Boundary::Custom(f) => {
                            let (mut x, mut y) = match axis {
                                Axis::X => {
                                    let (cj, m) = (line / mesh.npy(), line % mesh.npy());
                                    mesh.node_position(adjacent, cj, np - 1 - q, m)
                                }
                                Axis::Y => {
                                    let (ci, l) = (line / mesh.np(), line % mesh.np());
                                    mesh.node_position(ci, adjacent, l, np - 1 - q)
                                }
                            };
                            // reflect the interior node across the boundary face
                            match axis {
                                Axis::X => {
                                    let face = if ghost == 0 { mesh.x_range.0 } else { mesh.x_range.1 };
                                    x = 2.0 * face - x;
                                }
                                Axis::Y => {
                                    let face = if ghost == 0 { mesh.y_range.0 } else { mesh.y_range.1 };
                                    y = 2.0 * face - y;
                                }
                            }
                            f(GhostPoint { x, y, t }, &mirrored)
                        }
                        _ => unreachable!(),
                    }
                }
            };
        }
    }
}

/// Scheme tags of a padded line; ghost cells take the wrapped cell's tag on
/// periodic sides and the adjacent cell's tag otherwise.
pub fn gather_tags<const N: usize>(
    mesh: &Mesh,
    bc: &Boundaries<N>,
    tags: &[SchemeKind],
    axis: Axis,
    line: usize,
    out: &mut Vec<SchemeKind>,
) {
    let n = mesh.line_cells(axis);
    out.clear();
    let (lo, hi) = bc.sides(axis);
    let at = |c: usize| tags[mesh.line_cell(axis, line, c)];
    out.push(if lo.is_periodic() { at(n - 1) } else { at(0) });
    out.extend((0..n).map(at));
    out.push(if hi.is_periodic() { at(0) } else { at(n - 1) });
}
