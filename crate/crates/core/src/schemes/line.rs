use crate::error::Result;
use crate::nnw::{nnw2_interpolate, nnw2_linear, NnwTables, Side, WeightMode, MAX_R, MAX_STENCIL};
use crate::physics::{lax_friedrichs, lax_friedrichs_checked, Axis, CharBasis, ConservationLaw};

use super::{InterpConfig, OperatorTables, SchemeKind, VariableSet};

const MAX_FP: usize = 6;

/// Change of variables applied around one flux point.
#[derive(Clone, Copy)]
enum Transform<const N: usize> {
    Identity,
    Primitive,
    Char(CharBasis<N>),
}

impl<const N: usize> Transform<N> {
    #[inline]
    fn forward<L: ConservationLaw<N>>(&self, law: &L, u: &[f64; N]) -> [f64; N] {
        match self {
            Transform::Identity => *u,
            Transform::Primitive => law.to_primitive(u),
            Transform::Char(b) => b.to_characteristic(u),
        }
    }

    #[inline]
    fn backward<L: ConservationLaw<N>>(&self, law: &L, w: &[f64; N]) -> [f64; N] {
        match self {
            Transform::Identity => *w,
            Transform::Primitive => law.from_primitive(w),
            Transform::Char(b) => b.from_characteristic(w),
        }
    }
}

/// Reusable buffers for [`LineOperator::residual`].
#[derive(Debug, Clone, Default)]
pub struct LineScratch<const N: usize> {
    iface: Vec<[f64; N]>,
}

/// Residual of one line of cells in one direction.
///
/// The line holds `n` interior cells framed by one ghost cell on each side;
/// states are stored cell-major with `K + 1` nodes per cell.
#[derive(Clone, Copy)]
pub struct LineOperator<'a, L, const N: usize> {
    pub law: &'a L,
    pub tables: &'a OperatorTables,
    pub interp: InterpConfig,
    pub axis: Axis,
}

impl<'a, L: ConservationLaw<N>, const N: usize> LineOperator<'a, L, N> {
    pub fn new(law: &'a L, tables: &'a OperatorTables, interp: InterpConfig, axis: Axis) -> Self {
        Self {
            law,
            tables,
            interp,
            axis,
        }
    }

    #[inline]
    fn transform(&self, a: &[f64; N], b: &[f64; N]) -> Transform<N> {
        if N == 1 {
            return Transform::Identity;
        }
        match self.interp.effective_variables() {
            VariableSet::Conservative => Transform::Identity,
            VariableSet::Primitive => Transform::Primitive,
            VariableSet::Characteristic => {
                Transform::Char(self.law.characteristic_basis(a, b, self.axis))
            }
        }
    }

    /// Polynomial value `Σ w_l u_l` of one cell, formed in primitive
    /// variables when those are selected.
    #[inline]
    fn cpr_value<'w>(&self, w: impl IntoIterator<Item = &'w f64>, cell: &[[f64; N]]) -> [f64; N] {
        let prim = N > 1 && self.interp.effective_variables() == VariableSet::Primitive;
        let mut out = [0.0; N];
        for (&wl, u) in w.into_iter().zip(cell) {
            let v = if prim { self.law.to_primitive(u) } else { *u };
            for k in 0..N {
                out[k] += wl * v[k];
            }
        }
        if prim {
            self.law.from_primitive(&out)
        } else {
            out
        }
    }

    /// Weighted high-order trace of node `j` (local index `l`) toward `side`.
    #[inline]
    fn weighted_trace(
        &self,
        t: &NnwTables,
        states: &[[f64; N]],
        j: usize,
        l: usize,
        side: Side,
        tf: &Transform<N>,
    ) -> [f64; N] {
        let half = t.r - 1;
        let len = 2 * half + 1;
        let mut w = [[0.0; N]; MAX_STENCIL];
        for s in 0..len {
            w[s] = tf.forward(self.law, &states[j + s - half]);
        }
        let mut out = [0.0; N];
        let mut vals = [0.0; MAX_STENCIL];
        for c in 0..N {
            for s in 0..len {
                vals[s] = w[s][c];
            }
            out[c] = match self.interp.weights {
                WeightMode::Linear => t.interpolate_direct(l, side, &vals[..len]),
                mode => {
                    let is: [f64; MAX_R] = t.smoothness(l, &vals[..len]);
                    t.combine(l, side, &vals[..len], &is, mode)
                }
            };
        }
        tf.backward(self.law, &out)
    }

    #[inline]
    fn nnw2_trace(
        &self,
        states: &[[f64; N]],
        j: usize,
        l: usize,
        side: Side,
        tf: &Transform<N>,
    ) -> [f64; N] {
        let g = &self.tables.nnw2_gauss[l];
        let a = tf.forward(self.law, &states[j - 1]);
        let b = tf.forward(self.law, &states[j]);
        let c = tf.forward(self.law, &states[j + 1]);
        let f = match self.interp.weights {
            WeightMode::Linear => nnw2_linear,
            WeightMode::Nonlinear(_) => nnw2_interpolate,
        };
        let mut out = [0.0; N];
        for k in 0..N {
            let (ua, ub) = f(a[k], b[k], c[k], g);
            out[k] = match side {
                Side::Left => ua,
                Side::Right => ub,
            };
        }
        tf.backward(self.law, &out)
    }

    /// Trace at the flux point on `side` of node `j` under a subcell scheme.
    #[inline]
    fn subcell_trace(
        &self,
        kind: SchemeKind,
        states: &[[f64; N]],
        j: usize,
        l: usize,
        side: Side,
        tf: &Transform<N>,
    ) -> [f64; N] {
        match kind {
            SchemeKind::C5Nnw5 => self.weighted_trace(&self.tables.nnw_lgl, states, j, l, side, tf),
            SchemeKind::C2Nnw5 => {
                self.weighted_trace(&self.tables.nnw_gauss, states, j, l, side, tf)
            }
            SchemeKind::C2Nnw2 => self.nnw2_trace(states, j, l, side, tf),
            SchemeKind::C5Nnw1 => states[j],
            SchemeKind::Cpr => unreachable!("CPR has no subcell traces"),
        }
    }

    /// Trace of padded cell `cell` at its left or right end.
    #[inline]
    fn boundary_trace(
        &self,
        kind: SchemeKind,
        states: &[[f64; N]],
        cell: usize,
        side: Side,
        tf: &Transform<N>,
    ) -> [f64; N] {
        let np = self.tables.np();
        let base = cell * np;
        match kind {
            SchemeKind::Cpr => {
                let e = match side {
                    Side::Left => &self.tables.ops.extrap_left,
                    Side::Right => &self.tables.ops.extrap_right,
                };
                self.cpr_value(e, &states[base..base + np])
            }
            _ => {
                let l = match side {
                    Side::Left => 0,
                    Side::Right => np - 1,
                };
                self.subcell_trace(kind, states, base + l, l, side, tf)
            }
        }
    }

    /// Interface fluxes of a padded line, `n + 1` entries.
    pub fn interface_fluxes(
        &self,
        states: &[[f64; N]],
        tags: &[SchemeKind],
        out: &mut Vec<[f64; N]>,
    ) -> Result<()> {
        let np = self.tables.np();
        let n = tags.len() - 2;
        out.clear();
        for i in 0..=n {
            let a = &states[(i + 1) * np - 1];
            let b = &states[(i + 1) * np];
            let tf = self.transform(a, b);
            let ul = self.boundary_trace(tags[i], states, i, Side::Right, &tf);
            let ur = self.boundary_trace(tags[i + 1], states, i + 1, Side::Left, &tf);
            out.push(lax_friedrichs_checked(
                self.law,
                &ul,
                &ur,
                self.axis,
                (i.saturating_sub(1), i.min(n - 1)),
            )?);
        }
        Ok(())
    }

    /// Write `−scale · ∂F/∂ξ` for every interior node into `out`
    /// (`n · (K+1)` entries), adding to the existing values if `accumulate`.
    ///
    /// `scale` is `2 / h` for a cell of width `h`.
    pub fn residual(
        &self,
        states: &[[f64; N]],
        tags: &[SchemeKind],
        scale: f64,
        out: &mut [[f64; N]],
        accumulate: bool,
        scratch: &mut LineScratch<N>,
    ) -> Result<()> {
        let np = self.tables.np();
        let k = np - 1;
        let n = tags.len() - 2;
        debug_assert_eq!(states.len(), (n + 2) * np);
        debug_assert_eq!(out.len(), n * np);
        self.interface_fluxes(states, tags, &mut scratch.iface)?;
        let ops = &self.tables.ops;
        for c in 1..=n {
            let base = c * np;
            let mut fbar = [[0.0; N]; MAX_FP];
            fbar[0] = scratch.iface[c - 1];
            fbar[k + 1] = scratch.iface[c];
            let mut df = [[0.0; N]; MAX_FP];
            let kind = tags[c];
            match kind {
                SchemeKind::Cpr => {
                    let mut flgl = [[0.0; N]; MAX_FP];
                    for (q, fq) in flgl.iter_mut().enumerate().take(k + 2) {
                        let row = ops.sol_to_lgl.row(q);
                        let u = self.cpr_value(row.iter(), &states[base..base + np]);
                        *fq = self.law.flux(&u, self.axis);
                    }
                    for m in 0..np {
                        let row = ops.fd5_matrix.row(m);
                        for comp in 0..N {
                            let mut s = 0.0;
                            for q in 0..k + 2 {
                                s += row[q] * flgl[q][comp];
                            }
                            s += (fbar[0][comp] - flgl[0][comp]) * ops.g_left[m]
                                + (fbar[k + 1][comp] - flgl[k + 1][comp]) * ops.g_right[m];
                            df[m][comp] = s;
                        }
                    }
                }
                _ => {
                    for q in 1..=k {
                        let j = base + q;
                        let tf = self.transform(&states[j - 1], &states[j]);
                        let ul = self.subcell_trace(kind, states, j - 1, q - 1, Side::Right, &tf);
                        let ur = self.subcell_trace(kind, states, j, q, Side::Left, &tf);
                        fbar[q] = lax_friedrichs_checked(self.law, &ul, &ur, self.axis, (c - 1, c - 1))?;
                    }
                    match kind.layout() {
                        crate::nnw::FluxLayout::Lgl => {
                            for m in 0..np {
                                let row = ops.fd5_matrix.row(m);
                                for comp in 0..N {
                                    let mut s = 0.0;
                                    for q in 0..k + 2 {
                                        s += row[q] * fbar[q][comp];
                                    }
                                    df[m][comp] = s;
                                }
                            }
                        }
                        crate::nnw::FluxLayout::GaussWeight => {
                            for m in 0..np {
                                for comp in 0..N {
                                    df[m][comp] =
                                        (fbar[m + 1][comp] - fbar[m][comp]) * ops.fd2_inv_widths[m];
                                }
                            }
                        }
                    }
                }
            }
            let o = &mut out[(c - 1) * np..c * np];
            for m in 0..np {
                for comp in 0..N {
                    let v = -scale * df[m][comp];
                    if accumulate {
                        o[m][comp] += v;
                    } else {
                        o[m][comp] = v;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Unchecked LF flux, exposed for operators that skip validation.
#[allow(dead_code)]
#[inline]
pub(crate) fn common_flux<L: ConservationLaw<N>, const N: usize>(
    law: &L,
    ul: &[f64; N],
    ur: &[f64; N],
    axis: Axis,
) -> [f64; N] {
    lax_friedrichs(law, ul, ur, axis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nnw::WeightScheme;
    use crate::physics::{Advection, Euler1d};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn periodic_pad<const N: usize>(interior: &[[f64; N]], np: usize) -> Vec<[f64; N]> {
        let n = interior.len() / np;
        let mut v = Vec::with_capacity((n + 2) * np);
        v.extend_from_slice(&interior[(n - 1) * np..]);
        v.extend_from_slice(interior);
        v.extend_from_slice(&interior[..np]);
        v
    }

    fn periodic_tags(inner: &[SchemeKind]) -> Vec<SchemeKind> {
        let mut t = vec![*inner.last().unwrap()];
        t.extend_from_slice(inner);
        t.push(inner[0]);
        t
    }

    #[test]
    fn free_stream_all_schemes() {
        let tables = OperatorTables::new(4).unwrap();
        let law = Euler1d::default();
        let u0 = law.from_primitive(&[1.3, 0.7, 2.2]);
        let n = 5;
        let states = vec![u0; (n + 2) * 5];
        for kind in SchemeKind::ALL {
            for interp in [InterpConfig::linear(), InterpConfig::default(), InterpConfig::nonlinear(WeightScheme::js(), VariableSet::Primitive)] {
                let op = LineOperator::new(&law, &tables, interp, Axis::X);
                let mut out = vec![[9.0; 3]; n * 5];
                let mut scratch = LineScratch::default();
                op.residual(&states, &vec![kind; n + 2], 2.0, &mut out, false, &mut scratch)
                    .unwrap();
                for r in &out {
                    for v in r {
                        assert!(v.abs() < 1e-13, "{kind:?}: {v:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn cpr_exact_for_degree_k_advection() {
        // u = P_3(ξ) + ξ⁴ in every cell is not periodic, so use one cell with
        // ghost copies of the exact polynomial extension through upwind.
        let tables = OperatorTables::new(4).unwrap();
        let law = Advection::new_1d(1.0);
        let sp = tables.nodes.solution_points.clone();
        // global polynomial u(x) = x⁴ - 2x on three unit cells centred at -2,0,2 (ξ width 2)
        let f = |x: f64| x.powi(4) - 2.0 * x;
        let df = |x: f64| 4.0 * x.powi(3) - 2.0;
        let mut states = Vec::new();
        for c in [-2.0, 0.0, 2.0] {
            for &s in &sp {
                states.push([f(c + s)]);
            }
        }
        let op = LineOperator::new(&law, &tables, InterpConfig::linear(), Axis::X);
        let mut out = vec![[0.0]; 5];
        op.residual(&states, &[SchemeKind::Cpr; 3], 1.0, &mut out, false, &mut LineScratch::default())
            .unwrap();
        // the degree-4 polynomial is continuous, so the correction vanishes
        for (m, &s) in sp.iter().enumerate() {
            assert!((out[m][0] + df(s)).abs() < 1e-11, "m={m}: {} vs {}", out[m][0], -df(s));
        }
    }

    #[test]
    fn cell_conservation_telescopes() {
        let tables = OperatorTables::new(4).unwrap();
        let law = Euler1d::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 4;
        let np = 5;
        let interior: Vec<[f64; 3]> = (0..n * np)
            .map(|_| law.from_primitive(&[rng.gen_range(0.9..1.1), rng.gen_range(-0.1..0.1), rng.gen_range(0.9..1.1)]))
            .collect();
        let states = periodic_pad(&interior, np);
        let w = &tables.nodes.gauss_weights;
        for kind in SchemeKind::ALL {
            let tags = vec![kind; n + 2];
            let op = LineOperator::new(&law, &tables, InterpConfig::default(), Axis::X);
            let mut out = vec![[0.0; 3]; n * np];
            let mut scratch = LineScratch::default();
            op.residual(&states, &tags, 2.0, &mut out, false, &mut scratch).unwrap();
            for c in 0..n {
                for comp in 0..3 {
                    // with scale 2/h = 2 (h = 1): Σ w_l R_l (h/2) = -(F_R - F_L)
                    let s: f64 = (0..np).map(|l| w[l] * out[c * np + l][comp] * 0.5).sum();
                    let jump = scratch.iface[c + 1][comp] - scratch.iface[c][comp];
                    assert!((s + jump).abs() < 1e-12, "{kind:?} cell {c}: {s} vs {}", -jump);
                }
            }
        }
    }

    #[test]
    fn hybrid_assignment_conserves_globally() {
        let tables = OperatorTables::new(4).unwrap();
        let law = Euler1d::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 8;
        let np = 5;
        let interior: Vec<[f64; 3]> = (0..n * np)
            .map(|_| law.from_primitive(&[rng.gen_range(0.9..1.1), rng.gen_range(-0.1..0.1), rng.gen_range(0.9..1.1)]))
            .collect();
        let inner: Vec<SchemeKind> = (0..n).map(|i| SchemeKind::ALL[i % 4]).collect();
        let tags = periodic_tags(&inner);
        let states = periodic_pad(&interior, np);
        let op = LineOperator::new(&law, &tables, InterpConfig::default(), Axis::X);
        let mut out = vec![[0.0; 3]; n * np];
        op.residual(&states, &tags, 2.0, &mut out, false, &mut LineScratch::default()).unwrap();
        let w = &tables.nodes.gauss_weights;
        for comp in 0..3 {
            let total: f64 = (0..n * np).map(|j| w[j % np] * out[j][comp]).sum();
            assert!(total.abs() < 1e-12, "component {comp}: {total:e}");
        }
    }

    #[test]
    fn linear_mode_is_linear() {
        let tables = OperatorTables::new(4).unwrap();
        let law = Advection::new_1d(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 4;
        let np = 5;
        let a: Vec<[f64; 1]> = (0..n * np).map(|_| [rng.gen_range(-1.0..1.0)]).collect();
        let b: Vec<[f64; 1]> = (0..n * np).map(|_| [rng.gen_range(-1.0..1.0)]).collect();
        let ab: Vec<[f64; 1]> = a.iter().zip(&b).map(|(x, y)| [2.0 * x[0] - 3.0 * y[0]]).collect();
        for kind in SchemeKind::ALL {
            let op = LineOperator::new(&law, &tables, InterpConfig::linear(), Axis::X);
            let tags = vec![kind; n + 2];
            let run = |v: &[[f64; 1]]| {
                let mut out = vec![[0.0]; n * np];
                op.residual(&periodic_pad(v, np), &tags, 2.0, &mut out, false, &mut LineScratch::default())
                    .unwrap();
                out
            };
            let (ra, rb, rab) = (run(&a), run(&b), run(&ab));
            for j in 0..n * np {
                assert!((rab[j][0] - (2.0 * ra[j][0] - 3.0 * rb[j][0])).abs() < 1e-11);
            }
        }
    }
}
