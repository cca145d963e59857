//! Eigenvalues of periodic linear-advection operators through the local
//! matrices of their block-circulant form.
//!
//! For `E = (1/(K+1)) blockcirc(B, C, 0, …, 0, A)` on `M` cells:
//! - `Spec(E)` is the union of `Spec(H(φ_m))`, `φ_m = 2πm/M`, with
//!   `H(φ) = (A e^{−iφ} + B + C e^{iφ})/(K+1)`;
//! - `G(φ) = H((K+1)φ)` has the eigenvalues `λ(φ − l·2π/(K+1))` of a single
//!   curve `λ(ψ)`, `ψ ∈ [0, 2π)`, which is tracked here from `λ(0) = 0`.

mod wcns;

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::{map_indices, ExecMode};
use crate::schemes::{BlockTriple, CellScheme, LinearOperator, SchemeKind};

pub use wcns::{Wcns3, Wcns5, HYBRID6};

pub type CMatrix = DMatrix<Complex64>;

/// Radius used to match eigenvalues between multisets.
pub const MATCH_TOL: f64 = 1e-9;

/// Oversampling of the `ψ` grid while following the curve.
const TRACK_REFINE: usize = 16;

/// Operators with a spectral curve: the cell schemes and the reference WCNS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralScheme {
    Cell(SchemeKind),
    Wcns3,
    Wcns5,
}

impl SpectralScheme {
    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "WCNS3" => Ok(SpectralScheme::Wcns3),
            "WCNS5" => Ok(SpectralScheme::Wcns5),
            other => SchemeKind::parse(other).map(SpectralScheme::Cell),
        }
    }

    /// Degree of the cell polynomial (`points − 1`).
    pub fn degree(self, k: usize) -> usize {
        match self {
            SpectralScheme::Cell(_) => k,
            SpectralScheme::Wcns3 => 2,
            SpectralScheme::Wcns5 => 4,
        }
    }

    pub fn label(self, k: usize) -> String {
        match self {
            SpectralScheme::Cell(s) => s.label(k).to_string(),
            SpectralScheme::Wcns3 => "WCNS3".into(),
            SpectralScheme::Wcns5 => "WCNS5".into(),
        }
    }

    pub fn operator(self, k: usize) -> Result<Box<dyn LinearOperator>> {
        Ok(match self {
            SpectralScheme::Cell(s) => Box::new(CellScheme::new(s, k)?),
            SpectralScheme::Wcns3 => Box::new(Wcns3),
            SpectralScheme::Wcns5 => Box::new(Wcns5),
        })
    }

    pub fn blocks(self, k: usize) -> Result<BlockTriple> {
        BlockTriple::from_operator(self.operator(k)?.as_ref())
    }
}

/// The reference third-order blocks, as a cross-check of the extracted ones.
pub fn wcns3_reference_blocks() -> BlockTriple {
    let a = DMatrix::from_row_slice(3, 3, &[0.0, -0.5, 3.0, 0.0, 0.0, -0.5, 0.0, 0.0, 0.0]);
    let b = DMatrix::from_row_slice(3, 3, &[-1.5, -1.0, 0.0, 3.0, -1.5, -1.0, -0.5, 3.0, -1.5]);
    let c = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0]);
    BlockTriple { a, b, c }
}

/// `λ(ψ)` of the third-order scheme in closed form.
pub fn wcns3_closed_form(psi: f64) -> Complex64 {
    Complex64::new(
        -0.5 + 2.0 / 3.0 * psi.cos() - (2.0 * psi).cos() / 6.0,
        (2.0 * psi).sin() / 6.0 - 4.0 / 3.0 * psi.sin(),
    )
}

fn combine(blocks: &BlockTriple, theta: f64) -> CMatrix {
    let p = blocks.size();
    let em = Complex64::from_polar(1.0, -theta);
    let ep = Complex64::from_polar(1.0, theta);
    let s = 1.0 / p as f64;
    CMatrix::from_fn(p, p, |r, c| {
        (em * blocks.a[(r, c)] + blocks.b[(r, c)] + ep * blocks.c[(r, c)]) * s
    })
}

/// `(H(φ), G(φ))`.
pub fn local_matrices(blocks: &BlockTriple, phi: f64) -> (CMatrix, CMatrix) {
    (combine(blocks, phi), combine(blocks, phi * blocks.size() as f64))
}

/// Eigenvalues of a small complex matrix from its Schur form.
pub fn complex_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(m.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::Numeric("eigenvalue iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}

/// Eigenvalues of a real matrix (dense oracle).
pub fn real_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(m.clone(), 1e-15, 100_000)
        .ok_or_else(|| Error::Numeric("eigenvalue iteration did not converge".into()))?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

fn phi(m: usize, cells: usize) -> f64 {
    2.0 * PI * m as f64 / cells as f64
}

/// `SH` and `SG` for `M` cells.
#[derive(Debug, Clone)]
pub struct TheoremSpectra {
    pub cells: usize,
    pub points: usize,
    /// `Spec(H_m)` for `m = 0..M`.
    pub h: Vec<Vec<Complex64>>,
    /// `Spec(G_m)` for `m = 0..M`.
    pub g: Vec<Vec<Complex64>>,
}

impl TheoremSpectra {
    pub fn sh(&self) -> Vec<Complex64> {
        self.h.concat()
    }

    pub fn sg(&self) -> Vec<Complex64> {
        self.g.concat()
    }
}

pub fn spectrum_via_theorem(blocks: &BlockTriple, cells: usize, exec: ExecMode) -> Result<TheoremSpectra> {
    if cells < 3 {
        return Err(Error::config("at least three cells are required"));
    }
    let pairs = map_indices(exec, cells, |m| {
        let (h, g) = local_matrices(blocks, phi(m, cells));
        Ok::<_, Error>((complex_eigenvalues(&h)?, complex_eigenvalues(&g)?))
    });
    let mut h = Vec::with_capacity(cells);
    let mut g = Vec::with_capacity(cells);
    for pair in pairs {
        let (a, b) = pair?;
        h.push(a);
        g.push(b);
    }
    Ok(TheoremSpectra {
        cells,
        points: blocks.size(),
        h,
        g,
    })
}

/// Pair every element of `a` with a distinct element of `b` within `tol`
/// (nearest unused first). Returns the largest matched distance, or `None`
/// when the sizes differ or some element has no partner.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64], tol: f64) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut order: Vec<usize> = (0..b.len()).collect();
    order.sort_by(|&i, &j| b[i].re.total_cmp(&b[j].re).then(b[i].im.total_cmp(&b[j].im)));
    let sorted: Vec<Complex64> = order.iter().map(|&i| b[i]).collect();
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for z in a {
        // candidates lie in a window of real parts around z
        let lo = sorted.partition_point(|w| w.re < z.re - tol);
        let mut best: Option<(usize, f64)> = None;
        for (i, w) in sorted.iter().enumerate().skip(lo) {
            if w.re > z.re + tol {
                break;
            }
            let d = (w - z).norm();
            if !used[i] && d <= tol && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        let (i, d) = best?;
        used[i] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

pub fn multiset_eq(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    multiset_distance(a, b, tol).is_some()
}

/// Every value of `a` lies within `tol` of some value of `b`.
pub fn set_contained(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.iter().all(|z| b.iter().any(|w| (w - z).norm() <= tol))
}

/// `a ⊂ b` and `a ≠ b` as sets, within `tol`.
pub fn proper_subset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    set_contained(a, b, tol) && !set_contained(b, a, tol)
}

/// The curve `λ(ψ_j)` on `ψ_j = 2πj/(M(K+1))`, `j = 0..=M(K+1)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrincipalCurve {
    pub cells: usize,
    pub points: usize,
    pub psi: Vec<f64>,
    pub lambda: Vec<Complex64>,
}

impl PrincipalCurve {
    /// Value at `ψ_j` with `j` taken modulo `M(K+1)`.
    pub fn at(&self, j: isize) -> Complex64 {
        let n = (self.cells * self.points) as isize;
        self.lambda[j.rem_euclid(n) as usize]
    }
}

/// Follow the eigenvalue of `G(ψ)` that starts at the one nearest 0 for
/// `ψ = 0`, by nearest continuation with linear prediction on a refined grid.
pub fn track_principal(blocks: &BlockTriple, cells: usize, exec: ExecMode) -> Result<PrincipalCurve> {
    let p = blocks.size();
    let n = cells * p;
    let fine = n * TRACK_REFINE;
    let spectra = map_indices(exec, fine + 1, |j| {
        let psi = 2.0 * PI * j as f64 / fine as f64;
        complex_eigenvalues(&local_matrices(blocks, psi).1)
    });
    let mut path = Vec::with_capacity(fine + 1);
    for (j, s) in spectra.into_iter().enumerate() {
        let s = s?;
        let target = match path.len() {
            0 => Complex64::new(0.0, 0.0),
            1 => path[0],
            _ => path[j - 1] * 2.0 - path[j - 2],
        };
        let next = s
            .iter()
            .copied()
            .min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()))
            .ok_or_else(|| Error::Numeric("empty local spectrum".into()))?;
        path.push(next);
    }
    let lambda: Vec<Complex64> = (0..=n).map(|j| path[j * TRACK_REFINE]).collect();
    let psi = (0..=n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
    Ok(PrincipalCurve {
        cells,
        points: p,
        psi,
        lambda,
    })
}

/// Outcome of checking `λ^{(l)}(φ_m) = λ(φ_m − (l−1)·2π/(K+1))`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslationReport {
    /// Largest distance between `Spec(G_m)` and the shifted curve values.
    pub max_residual: f64,
    /// Whether every `Spec(G_m)` was matched within [`MATCH_TOL`].
    pub matched: bool,
    /// When `(K+1) | M`: whether all groups coincide as multisets.
    pub groups_equal: Option<bool>,
}

/// Eigenvalue `λ^{(l)}(G_m)`, `l = 1..=K+1`, read off the tracked curve.
pub fn group_value(curve: &PrincipalCurve, l: usize, m: usize) -> Complex64 {
    let shift = ((l - 1) * curve.cells) as isize;
    curve.at((m * curve.points) as isize - shift)
}

pub fn group_translation_check(
    blocks: &BlockTriple,
    curve: &PrincipalCurve,
    spectra: &TheoremSpectra,
) -> TranslationReport {
    debug_assert_eq!(blocks.size(), curve.points);
    let p = curve.points;
    let mut max_residual = 0.0f64;
    let mut matched = true;
    for (m, g) in spectra.g.iter().enumerate() {
        let shifted: Vec<Complex64> = (1..=p).map(|l| group_value(curve, l, m)).collect();
        match multiset_distance(g, &shifted, MATCH_TOL) {
            Some(d) => max_residual = max_residual.max(d),
            None => {
                matched = false;
                let d = g
                    .iter()
                    .map(|z| shifted.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min))
                    .fold(0.0, f64::max);
                max_residual = max_residual.max(d);
            }
        }
    }
    let groups_equal = (spectra.cells % p == 0).then(|| {
        let group = |l: usize| -> Vec<Complex64> { (0..spectra.cells).map(|m| group_value(curve, l, m)).collect() };
        let first = group(1);
        (2..=p).all(|l| multiset_eq(&first, &group(l), MATCH_TOL))
    });
    TranslationReport {
        max_residual,
        matched,
        groups_equal,
    }
}

/// `SG` rebuilt from the curve alone.
pub fn sg_from_curve(curve: &PrincipalCurve) -> Vec<Complex64> {
    let (m, p) = (curve.cells, curve.points);
    if m % p == 0 {
        (0..m).map(|j| curve.at((j * p) as isize)).collect()
    } else {
        (0..m * p).map(|j| curve.at(j as isize)).collect()
    }
}

/// One exported sample of a group curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    /// Group `l`, 1-based.
    pub group: usize,
    pub phi: f64,
    pub lambda: Complex64,
    /// Imaginary part of the exact transport symbol `−iψ` for the same mode.
    pub exact_im: f64,
}

/// Dispersion (Im λ) and dissipation (Re λ) curves per group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralCurve {
    pub scheme: String,
    pub degree: usize,
    pub cells: usize,
    /// `(l, φ_m)` for `l = 1..=K+1`, `m = 0..=M`.
    pub samples: Vec<CurveSample>,
    pub principal: PrincipalCurve,
}

impl SpectralCurve {
    pub fn max_real(&self) -> f64 {
        self.principal.lambda.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

pub fn dispersion_dissipation_curves(
    scheme: SpectralScheme,
    k: usize,
    cells: usize,
    exec: ExecMode,
) -> Result<SpectralCurve> {
    if cells < 3 {
        return Err(Error::config("at least three cells are required"));
    }
    let blocks = scheme.blocks(k)?;
    let curve = track_principal(&blocks, cells, exec)?;
    let p = curve.points;
    let mut samples = Vec::with_capacity(p * (cells + 1));
    for l in 1..=p {
        for m in 0..=cells {
            let phi = phi(m, cells);
            let psi = phi - (l - 1) as f64 * 2.0 * PI / p as f64;
            samples.push(CurveSample {
                group: l,
                phi,
                lambda: group_value(&curve, l, m),
                exact_im: -wrap_pi(psi),
            });
        }
    }
    Ok(SpectralCurve {
        scheme: scheme.label(k),
        degree: scheme.degree(k),
        cells,
        samples,
        principal: curve,
    })
}

/// Everything the theorem asserts for one scheme and one `M`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremAudit {
    pub scheme: String,
    pub cells: usize,
    pub points: usize,
    /// `SG = SH` as multisets (expected when `(K+1) ∤ M`).
    pub sg_equals_sh: bool,
    /// `SG ⊊ SH` as sets (expected when `(K+1) | M`).
    pub sg_proper_subset: bool,
    /// `SH` agrees with a dense eigensolve of `E`, when one was run.
    pub dense_match: Option<f64>,
    pub translation: TranslationReport,
    /// Largest distance between `SG` and the curve samples of the theorem.
    pub curve_residual: Option<f64>,
    pub max_real: f64,
    /// `SH` is closed under conjugation.
    pub conjugate_symmetric: bool,
}

impl TheoremAudit {
    /// The clauses that should hold for this `M`.
    pub fn holds(&self) -> bool {
        let clause2 = if self.cells % self.points == 0 {
            self.sg_proper_subset
        } else {
            self.sg_equals_sh
        };
        clause2
            && self.translation.matched
            && self.translation.groups_equal.unwrap_or(true)
            && self.curve_residual.is_some()
            && self.dense_match.map_or(true, |d| d <= MATCH_TOL)
            && self.conjugate_symmetric
    }
}

/// Run all checks; `dense` also eigensolves the assembled global matrix.
pub fn audit_theorem(
    scheme: SpectralScheme,
    k: usize,
    cells: usize,
    dense: bool,
    exec: ExecMode,
) -> Result<TheoremAudit> {
    let op = scheme.operator(k)?;
    let blocks = BlockTriple::from_operator(op.as_ref())?;
    let spectra = spectrum_via_theorem(&blocks, cells, exec)?;
    let curve = track_principal(&blocks, cells, exec)?;
    let sh = spectra.sh();
    let sg = spectra.sg();
    let dense_match = if dense {
        let d = real_eigenvalues(&blocks.global(cells))?;
        Some(multiset_distance(&d, &sh, 1e-6).unwrap_or(f64::INFINITY))
    } else {
        None
    };
    let sg_set = sg_from_curve(&curve);
    let curve_residual = if cells % blocks.size() == 0 {
        let d = max_set_distance(&sg, &sg_set);
        (d <= MATCH_TOL).then_some(d)
    } else {
        multiset_distance(&sg, &sg_set, MATCH_TOL)
    };
    let conj: Vec<Complex64> = sh.iter().map(|z| z.conj()).collect();
    Ok(TheoremAudit {
        scheme: scheme.label(k),
        cells,
        points: blocks.size(),
        sg_equals_sh: multiset_eq(&sg, &sh, MATCH_TOL),
        sg_proper_subset: proper_subset(&sg, &sh, MATCH_TOL),
        dense_match,
        translation: group_translation_check(&blocks, &curve, &spectra),
        curve_residual,
        max_real: sh.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max),
        conjugate_symmetric: multiset_eq(&sh, &conj, 1e-10),
    })
}

fn max_set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|z| y.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}
