//! Periodic linear-advection operators as block-circulant matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::nnw::WeightMode;
use crate::physics::{Advection, Axis};

use super::{InterpConfig, LineOperator, LineScratch, OperatorTables, SchemeKind};

/// A linear semi-discrete operator on `M` periodic cells of unit width with
/// `points_per_cell` unknowns each. `apply` returns `h · du/dt` for `u_t + u_x = 0`.
pub trait LinearOperator {
    fn points_per_cell(&self) -> usize;
    fn apply(&self, u: &[f64], cells: usize) -> Result<Vec<f64>>;
    fn name(&self) -> String;
}

/// Cell-local blocks of `E = (1/(K+1)) · blockcirc(B, C, 0, …, 0, A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTriple {
    /// Coupling to the left neighbour.
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    /// Coupling to the right neighbour.
    pub c: DMatrix<f64>,
}

impl BlockTriple {
    pub fn size(&self) -> usize {
        self.b.nrows()
    }

    /// Global matrix for `m` cells.
    pub fn global(&self, m: usize) -> DMatrix<f64> {
        let p = self.size();
        let n = p * m;
        let mut e = DMatrix::zeros(n, n);
        let s = 1.0 / p as f64;
        for j in 0..m {
            let left = (j + m - 1) % m;
            let right = (j + 1) % m;
            for r in 0..p {
                for q in 0..p {
                    e[(j * p + r, left * p + q)] += s * self.a[(r, q)];
                    e[(j * p + r, j * p + q)] += s * self.b[(r, q)];
                    e[(j * p + r, right * p + q)] += s * self.c[(r, q)];
                }
            }
        }
        e
    }

    /// Extract the blocks by unit impulses on a five-cell periodic strip.
    /// Any response beyond the nearest neighbours is an error.
    pub fn from_operator(op: &dyn LinearOperator) -> Result<Self> {
        let p = op.points_per_cell();
        let cells = 5;
        let mut a = DMatrix::zeros(p, p);
        let mut b = DMatrix::zeros(p, p);
        let mut c = DMatrix::zeros(p, p);
        for q in 0..p {
            let mut u = vec![0.0; p * cells];
            u[2 * p + q] = 1.0;
            let r = op.apply(&u, cells)?;
            for row in 0..p {
                c[(row, q)] = r[p + row];
                b[(row, q)] = r[2 * p + row];
                a[(row, q)] = r[3 * p + row];
                let leak = r[row].abs().max(r[4 * p + row].abs());
                if leak > 1e-13 {
                    return Err(Error::Numeric(format!(
                        "{}: response {leak:e} beyond nearest neighbours",
                        op.name()
                    )));
                }
            }
        }
        Ok(Self { a, b, c })
    }
}

/// Dense `E = Δx · J` with `Δx = h/(K+1)`, assembled column by column.
pub fn dense_operator(op: &dyn LinearOperator, m: usize) -> Result<DMatrix<f64>> {
    let p = op.points_per_cell();
    let n = p * m;
    let mut e = DMatrix::zeros(n, n);
    for q in 0..n {
        let mut u = vec![0.0; n];
        u[q] = 1.0;
        let r = op.apply(&u, m)?;
        for row in 0..n {
            e[(row, q)] = r[row] / p as f64;
        }
    }
    Ok(e)
}

/// CPR or CNNW scheme on linear advection with linear weights and upwind flux.
pub struct CellScheme {
    pub kind: SchemeKind,
    pub tables: OperatorTables,
}

impl CellScheme {
    pub fn new(kind: SchemeKind, k: usize) -> Result<Self> {
        Ok(Self {
            kind,
            tables: OperatorTables::new(k)?,
        })
    }
}

impl LinearOperator for CellScheme {
    fn points_per_cell(&self) -> usize {
        self.tables.np()
    }

    fn apply(&self, u: &[f64], cells: usize) -> Result<Vec<f64>> {
        let np = self.tables.np();
        let law = Advection::new_1d(1.0);
        let op = LineOperator::new(&law, &self.tables, InterpConfig::linear(), Axis::X);
        let mut states = Vec::with_capacity((cells + 2) * np);
        states.extend(u[(cells - 1) * np..].iter().map(|&v| [v]));
        states.extend(u.iter().map(|&v| [v]));
        states.extend(u[..np].iter().map(|&v| [v]));
        let tags = vec![self.kind; cells + 2];
        let mut out = vec![[0.0]; cells * np];
        op.residual(&states, &tags, 2.0, &mut out, false, &mut LineScratch::default())?;
        Ok(out.into_iter().map(|v| v[0]).collect())
    }

    fn name(&self) -> String {
        self.kind.label(self.tables.degree()).to_string()
    }
}

/// Global matrix `E` and its blocks for a cell scheme on `m` periodic cells.
pub fn assemble_linear_operator(
    scheme: SchemeKind,
    m: usize,
    k: usize,
    weights: WeightMode,
) -> Result<(DMatrix<f64>, BlockTriple)> {
    if !matches!(weights, WeightMode::Linear) {
        return Err(Error::config(
            "the linear operator is defined only for linear interpolation weights",
        ));
    }
    if m < 3 {
        return Err(Error::config("at least three periodic cells are required"));
    }
    let op = CellScheme::new(scheme, k)?;
    let blocks = BlockTriple::from_operator(&op)?;
    Ok((blocks.global(m), blocks))
}
