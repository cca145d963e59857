//! Randomised property suites shared by `properties.rs` and the acceptance
//! harness. Each suite draws its cases from proptest strategies with a fixed
//! seed and returns the first counterexample as an error string.

#![allow(dead_code)]

use cnnw_core::basis::NodeSet;
use cnnw_core::mesh::{Boundaries, Mesh};
use cnnw_core::nnw::{
    nnw1_interpolate, nnw2_geometry, nnw2_interpolate, nonlinear_weights, FluxLayout, NnwTables, Side, WeightMode,
    WeightScheme, MAX_R,
};
use cnnw_core::parallel::ExecMode;
use cnnw_core::physics::{Axis, ConservationLaw, Euler1d, Euler2d};
use cnnw_core::schemes::{InterpConfig, LineOperator, LineScratch, OperatorTables, SchemeKind, VariableSet};
use cnnw_core::solver::Discretization;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const TRIALS: u32 = 10_000;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn finish<V: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<V>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// The seven interpolation settings exercised by the operator suites.
pub fn interp_config(i: usize) -> InterpConfig {
    let vars = [VariableSet::Conservative, VariableSet::Primitive, VariableSet::Characteristic];
    match i {
        0 => InterpConfig::linear(),
        1..=3 => InterpConfig::nonlinear(WeightScheme::js(), vars[i - 1]),
        _ => InterpConfig::nonlinear(WeightScheme::z(), vars[(i - 4) % 3]),
    }
}

fn kind_strategy() -> impl Strategy<Value = SchemeKind> {
    (0u8..5).prop_map(|t| SchemeKind::from_tag(t).unwrap())
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn max_abs<const N: usize>(v: &[[f64; N]]) -> f64 {
    v.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
}

/// Uniform states on a periodic 3×3 grid give a zero residual for any
/// per-cell assignment and interpolation setting, to round-off relative to
/// the flux scale.
pub fn free_stream(cases: u32) -> Result<(), String> {
    let law = Euler2d::default();
    let discs: Vec<Discretization<Euler2d, 4>> = [2usize, 4]
        .iter()
        .map(|&k| {
            let mesh = Mesh::rect(k, 3, 3, (0.0, 3.0), (0.0, 3.0)).unwrap();
            Discretization::new(law, mesh, Boundaries::periodic(), InterpConfig::linear(), ExecMode::Sequential)
                .unwrap()
        })
        .collect();
    let strategy = (
        0usize..2,
        0usize..7,
        log_uniform(1e-2, 1e2),
        -10.0f64..10.0,
        -10.0f64..10.0,
        log_uniform(1e-2, 1e2),
        prop::collection::vec(kind_strategy(), 9),
    );
    let r = runner(cases).run(&strategy, |(ki, ii, rho, u, v, p, tags)| {
        let mut disc = discs[ki].clone();
        disc.interp = interp_config(ii);
        let state = law.from_primitive(&[rho, u, v, p]);
        let field = vec![state; disc.mesh.n_nodes()];
        let mut out = vec![[f64::NAN; 4]; field.len()];
        disc.residual(&field, &tags, 0.0, &mut out)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let scale = max_abs(&[law.flux(&state, Axis::X), law.flux(&state, Axis::Y)]) * 2.0 / disc.mesh.hx();
        // eigenvector round-off grows with the Mach number
        let mach = (u * u + v * v).sqrt() / (law.gamma * p / rho).sqrt();
        let worst = max_abs(&out);
        prop_assert!(
            worst <= 1e-12 * scale * (1.0 + mach),
            "residual {worst:e} against flux scale {scale:e} at Mach {mach:.1}"
        );
        Ok(())
    });
    finish(r)
}

/// Reference-space stencil coordinates around solution point `l`, with
/// neighbour nodes shifted by ∓2.
fn stencil_coords(sp: &[f64], l: usize, half: usize) -> Vec<f64> {
    let n = sp.len() as isize;
    (l as isize - half as isize..=l as isize + half as isize)
        .map(|j| {
            if j < 0 {
                sp[(j + n) as usize] - 2.0
            } else if j >= n {
                sp[(j - n) as usize] + 2.0
            } else {
                sp[j as usize]
            }
        })
        .collect()
}

struct InterpCase {
    nodes: NodeSet,
    tables: NnwTables,
}

/// Weighted interpolation reproduces linear data exactly, commutes with
/// adding a constant, and stays inside the hull of its small-stencil
/// candidates; nonlinear weights are convex; NNW2 and NNW1 are bounded by
/// their stencil values.
pub fn interpolation(cases: u32) -> Result<(), String> {
    let setups: Vec<InterpCase> = [2usize, 4]
        .iter()
        .flat_map(|&k| {
            [FluxLayout::Lgl, FluxLayout::GaussWeight].into_iter().map(move |layout| {
                let nodes = NodeSet::new(k).unwrap();
                let tables = NnwTables::new(&nodes, layout).unwrap();
                InterpCase { nodes, tables }
            })
        })
        .collect();
    let nnw2 = nnw2_geometry(&NodeSet::new(4).unwrap(), FluxLayout::GaussWeight);
    let strategy = (
        0usize..setups.len(),
        0usize..5,
        any::<bool>(),
        any::<bool>(),
        prop::array::uniform5(-1.0f64..1.0),
        log_uniform(1e-3, 1e3),
        -5.0f64..5.0,
        (-3.0f64..3.0, -3.0f64..3.0),
        prop::array::uniform3(log_uniform(1e-20, 1e4)),
    );
    let r = runner(cases).run(&strategy, |(si, l, right, z, raw, amp, shift, (c0, c1), is)| {
        let case = &setups[si];
        let t = &case.tables;
        let l = l % (t.degree + 1);
        let side = if right { Side::Right } else { Side::Left };
        let ws = if z { WeightScheme::z() } else { WeightScheme::js() };
        let mode = WeightMode::Nonlinear(ws);
        let len = t.stencil_len();
        let vals: Vec<f64> = raw[..len].iter().map(|v| amp * v).collect();

        // exact on linear data
        let xs = stencil_coords(&case.nodes.solution_points, l, t.r - 1);
        let xf = t.flux_points[l + side.index()];
        let lin: Vec<f64> = xs.iter().map(|x| c0 + c1 * x).collect();
        let exact = c0 + c1 * xf;
        for m in [WeightMode::Linear, mode] {
            let got = t.interpolate(l, side, &lin, m);
            prop_assert!((got - exact).abs() <= 1e-12 * (1.0 + exact.abs()), "linear data: {got} vs {exact}");
        }

        // constant shift and convex combination of candidates
        let base = t.interpolate(l, side, &vals, mode);
        let shifted: Vec<f64> = vals.iter().map(|v| v + shift).collect();
        let moved = t.interpolate(l, side, &shifted, mode);
        prop_assert!((moved - base - shift).abs() <= 1e-9 * (amp + shift.abs()), "shift: {moved} vs {base} + {shift}");
        let coeffs = t.target(l, side);
        let cands: Vec<f64> = (0..t.r)
            .map(|m| (0..t.r).map(|j| coeffs.small[m][j] * vals[m + j]).sum())
            .collect();
        let lo = cands.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = cands.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let tol = 1e-12 * amp;
        prop_assert!(base >= lo - tol && base <= hi + tol, "{base} outside [{lo}, {hi}]");

        // nonlinear weights are a convex combination
        let w = nonlinear_weights(&coeffs.linear[..t.r], &is[..t.r], ws);
        prop_assert!(w[..t.r].iter().all(|&x| x >= 0.0), "negative weight {w:?}");
        prop_assert!((w[..t.r].iter().sum::<f64>() - 1.0).abs() < 1e-13);
        prop_assert!(w[t.r..MAX_R].iter().all(|&x| x == 0.0));

        // NNW2 and NNW1
        let (a, b) = nnw2_interpolate(vals[0], vals[1], vals[2], &nnw2[l]);
        let lo3 = vals[0].min(vals[1]).min(vals[2]) - tol;
        let hi3 = vals[0].max(vals[1]).max(vals[2]) + tol;
        prop_assert!(a >= lo3 && a <= hi3 && b >= lo3 && b <= hi3, "NNW2 ({a}, {b}) outside [{lo3}, {hi3}]");
        // linear data through the NNW2 stencil is left unlimited
        let [g1, g2, g3, g4] = nnw2[l].gaps;
        let u2 = c0 + c1 * (g1 + g2);
        let (a, b) = nnw2_interpolate(c0, u2, u2 + c1 * (g3 + g4), &nnw2[l]);
        prop_assert!((a - (c0 + c1 * g1)).abs() < 1e-12 && (b - (u2 + c1 * g3)).abs() < 1e-12, "NNW2 linear ({a}, {b})");
        prop_assert_eq!(nnw1_interpolate(vals[1]), (vals[1], vals[1]));
        Ok(())
    });
    finish(r)
}

fn euler_prim() -> impl Strategy<Value = [f64; 4]> {
    (log_uniform(1e-3, 1e3), -20.0f64..20.0, -20.0f64..20.0, log_uniform(1e-3, 1e3))
        .prop_map(|(r, u, v, p)| [r, u, v, p])
}

fn identity_error<const N: usize>(left: &[[f64; N]; N], right: &[[f64; N]; N]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in 0..N {
            let s: f64 = (0..N).map(|k| left[i][k] * right[k][j]).sum();
            let e = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - e).abs());
        }
    }
    worst
}

fn rel_diff<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

/// Roe-averaged eigenvector matrices are mutual inverses, and states survive
/// the characteristic and primitive round trips.
pub fn characteristic_round_trip(cases: u32) -> Result<(), String> {
    let e1 = Euler1d::default();
    let e2 = Euler2d::default();
    let strategy = (euler_prim(), euler_prim(), any::<bool>());
    let r = runner(cases).run(&strategy, |(pa, pb, y)| {
        let axis = if y { Axis::Y } else { Axis::X };
        let (a, b) = (e2.from_primitive(&pa), e2.from_primitive(&pb));
        let basis = e2.characteristic_basis(&a, &b, axis);
        let err = identity_error(&basis.left, &basis.right);
        prop_assert!(err < 1e-10, "2D L·R − I = {err:e}");
        for u in [a, b] {
            let back = basis.from_characteristic(&basis.to_characteristic(&u));
            prop_assert!(rel_diff(&back, &u) < 1e-10, "2D round trip {back:?} vs {u:?}");
            prop_assert!(rel_diff(&e2.from_primitive(&e2.to_primitive(&u)), &u) < 1e-13);
        }

        let (a1, b1) = (e1.from_primitive(&[pa[0], pa[1], pa[3]]), e1.from_primitive(&[pb[0], pb[1], pb[3]]));
        let basis = e1.characteristic_basis(&a1, &b1, Axis::X);
        let err = identity_error(&basis.left, &basis.right);
        prop_assert!(err < 1e-10, "1D L·R − I = {err:e}");
        for u in [a1, b1] {
            let back = basis.from_characteristic(&basis.to_characteristic(&u));
            prop_assert!(rel_diff(&back, &u) < 1e-10, "1D round trip {back:?} vs {u:?}");
            prop_assert!(rel_diff(&e1.from_primitive(&e1.to_primitive(&u)), &u) < 1e-13);
        }
        Ok(())
    });
    finish(r)
}

/// On random periodic data with a random per-cell assignment, each cell's
/// Gauss-weighted residual equals the jump of its interface fluxes, so the
/// weighted total vanishes.
pub fn conservation_telescoping(cases: u32) -> Result<(), String> {
    let law = Euler2d::default();
    let tables = [OperatorTables::new(2).unwrap(), OperatorTables::new(4).unwrap()];
    let strategy = (0usize..2, 3usize..8, 0usize..7, any::<bool>(), log_uniform(0.05, 20.0)).prop_flat_map(
        |(ki, n, ii, y, h)| {
            let np = 2 * ki + 3;
            (
                Just((ki, n, ii, y, h)),
                prop::collection::vec((0.8f64..1.2, -0.2f64..0.2, -0.2f64..0.2, 0.8f64..1.2), n * np),
                prop::collection::vec(kind_strategy(), n),
            )
        },
    );
    let r = runner(cases).run(&strategy, |((ki, n, ii, y, h), prims, inner)| {
        let t = &tables[ki];
        let np = t.np();
        let axis = if y { Axis::Y } else { Axis::X };
        let interior: Vec<[f64; 4]> = prims.iter().map(|&(r, u, v, p)| law.from_primitive(&[r, u, v, p])).collect();
        let mut states = interior[(n - 1) * np..].to_vec();
        states.extend_from_slice(&interior);
        states.extend_from_slice(&interior[..np]);
        let mut tags = vec![inner[n - 1]];
        tags.extend_from_slice(&inner);
        tags.push(inner[0]);

        let op = LineOperator::new(&law, t, interp_config(ii), axis);
        let scale = 2.0 / h;
        let mut out = vec![[0.0; 4]; n * np];
        op.residual(&states, &tags, scale, &mut out, false, &mut LineScratch::default())
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut iface = Vec::new();
        op.interface_fluxes(&states, &tags, &mut iface)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        let w = &t.nodes.gauss_weights;
        let fscale = max_abs(&iface).max(1.0);
        for comp in 0..4 {
            let mut total = 0.0;
            for c in 0..n {
                let s: f64 = (0..np).map(|l| w[l] * out[c * np + l][comp] * 0.5 * h).sum();
                let jump = iface[c + 1][comp] - iface[c][comp];
                prop_assert!(
                    (s + jump).abs() <= 1e-12 * fscale,
                    "{:?} cell {c} component {comp}: {s:e} vs {:e}",
                    inner[c],
                    -jump
                );
                total += s;
            }
            prop_assert!(total.abs() <= 1e-12 * fscale * n as f64, "component {comp} total {total:e}");
        }
        Ok(())
    });
    finish(r)
}

pub const SUITES: [(&str, fn(u32) -> Result<(), String>); 4] = [
    ("free-stream preservation", free_stream),
    ("interpolation consistency and boundedness", interpolation),
    ("characteristic round trip", characteristic_round_trip),
    ("discrete conservation telescoping", conservation_telescoping),
];
