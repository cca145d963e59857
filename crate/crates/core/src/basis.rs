//! Reference-cell geometry: Legendre-Gauss solution points, flux point
//! layouts, quadrature weights, Lagrange operators and Radau correction
//! derivatives.
//!
//! Everything here is computed once and then shared read-only.

use crate::error::{Error, Result};

/// Polynomial degree supported by the operator tables.
pub fn check_degree(k: usize) -> Result<()> {
    match k {
        2 | 4 => Ok(()),
        _ => Err(Error::config(format!(
            "unsupported polynomial degree K={k} (expected 2 or 4)"
        ))),
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        // P'_k = P'_{k-2} + (2k-1) P_{k-1}
        let d2 = d0 + (2.0 * kf - 1.0) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    (p1, d1)
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on `P_n`.
pub fn gauss_legendre_newton(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n {
        // Chebyshev-like initial guess, ascending order
        let mut z = -(std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, z);
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Gauss-Legendre-Lobatto nodes (endpoints plus roots of `P'_{n-1}`).
pub fn gauss_lobatto_newton(n: usize) -> Vec<f64> {
    let p = n - 1;
    let mut x = vec![0.0; n];
    x[0] = -1.0;
    x[n - 1] = 1.0;
    for i in 1..n - 1 {
        let mut z = -(std::f64::consts::PI * i as f64 / p as f64).cos();
        for _ in 0..100 {
            // Newton on P'_p using P''_p from the Legendre ODE
            let (pp, dp) = legendre(p, z);
            let ddp = (2.0 * z * dp - (p * (p + 1)) as f64 * pp) / (1.0 - z * z);
            let dz = dp / ddp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = z;
    }
    x
}

/// LG solution points and weights for degree `K` (K+1 points), closed forms.
pub fn legendre_gauss_nodes(k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_degree(k)?;
    Ok(match k {
        2 => {
            let s = (3.0f64 / 5.0).sqrt();
            (vec![-s, 0.0, s], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])
        }
        _ => {
            let r70 = 70f64.sqrt();
            let s1 = -((35.0 + 2.0 * r70) / 7.0).sqrt() / 3.0;
            let s2 = -((35.0 - 2.0 * r70) / 7.0).sqrt() / 3.0;
            let w1 = (322.0 - 13.0 * r70) / 900.0;
            let w2 = (322.0 + 13.0 * r70) / 900.0;
            (
                vec![s1, s2, 0.0, -s2, -s1],
                vec![w1, w2, 128.0 / 225.0, w2, w1],
            )
        }
    })
}

/// LGL flux points for degree `K` (K+2 points including ±1), closed forms.
pub fn lgl_flux_points(k: usize) -> Result<Vec<f64>> {
    check_degree(k)?;
    Ok(match k {
        2 => {
            let s = 1.0 / 5f64.sqrt();
            vec![-1.0, -s, s, 1.0]
        }
        _ => {
            let r7 = 7f64.sqrt();
            let f2 = -(1.0 / 3.0 + 2.0 / (3.0 * r7)).sqrt();
            let f3 = -((7.0 - 2.0 * r7) / 21.0).sqrt();
            vec![-1.0, f2, f3, -f3, -f2, 1.0]
        }
    })
}

/// Flux points splitting the cell into subcells whose widths are the Gauss
/// weights: `x_0 = -1`, `x_m = -1 + sum_{l<m} w_l`.
pub fn gauss_weight_flux_points(k: usize) -> Result<Vec<f64>> {
    let (_, w) = legendre_gauss_nodes(k)?;
    let mut pts = Vec::with_capacity(k + 2);
    pts.push(-1.0);
    let mut acc = -1.0;
    for (l, wl) in w.iter().enumerate() {
        acc += wl;
        pts.push(if l == k { 1.0 } else { acc });
    }
    Ok(pts)
}

/// Lagrange basis on `nodes` evaluated at `x`.
pub fn lagrange_weights(nodes: &[f64], x: f64) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| (x - xj) / (xi - xj))
                .product()
        })
        .collect()
}

/// First derivative of the Lagrange basis on `nodes` evaluated at `x`.
pub fn lagrange_derivative_weights(nodes: &[f64], x: f64) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|i| {
            let mut sum = 0.0;
            for k in 0..n {
                if k == i {
                    continue;
                }
                let mut prod = 1.0 / (nodes[i] - nodes[k]);
                for j in 0..n {
                    if j != i && j != k {
                        prod *= (x - nodes[j]) / (nodes[i] - nodes[j]);
                    }
                }
                sum += prod;
            }
            sum
        })
        .collect()
}

/// Second derivative of the Lagrange basis on `nodes` evaluated at `x`.
pub fn lagrange_second_derivative_weights(nodes: &[f64], x: f64) -> Vec<f64> {
    let n = nodes.len();
    (0..n)
        .map(|i| {
            let mut sum = 0.0;
            for k in 0..n {
                if k == i {
                    continue;
                }
                for q in 0..n {
                    if q == i || q == k {
                        continue;
                    }
                    let mut prod = 1.0 / ((nodes[i] - nodes[k]) * (nodes[i] - nodes[q]));
                    for j in 0..n {
                        if j != i && j != k && j != q {
                            prod *= (x - nodes[j]) / (nodes[i] - nodes[j]);
                        }
                    }
                    sum += prod;
                }
            }
            sum
        })
        .collect()
}

/// Row-major dense matrix used for the small operator tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Matrix `a[m][l] = L'_l(to[m])` for the Lagrange basis on `from`.
pub fn differentiation_matrix(from: &[f64], to: &[f64]) -> Result<Matrix> {
    for i in 0..from.len() {
        for j in i + 1..from.len() {
            if (from[i] - from[j]).abs() < 1e-14 {
                return Err(Error::Numeric(format!(
                    "duplicate interpolation nodes at indices {i} and {j}"
                )));
            }
        }
    }
    let mut m = Matrix::zeros(to.len(), from.len());
    for (r, &x) in to.iter().enumerate() {
        for (c, v) in lagrange_derivative_weights(from, x).into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

/// Interpolation matrix `m[r][c] = L_c(to[r])` for the basis on `from`.
pub fn interpolation_matrix(from: &[f64], to: &[f64]) -> Matrix {
    let mut m = Matrix::zeros(to.len(), from.len());
    for (r, &x) in to.iter().enumerate() {
        for (c, v) in lagrange_weights(from, x).into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

/// Derivatives of the left/right Radau correction functions,
/// `g_L = R_{R,K+1}` and `g_R = R_{L,K+1}`.
pub fn radau_correction_derivative(k: usize, x: f64) -> (f64, f64) {
    let (_, dk1) = legendre(k + 1, x);
    let (_, dk) = legendre(k, x);
    let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
    (0.5 * sign * (dk1 - dk), 0.5 * (dk1 + dk))
}

/// Sampled correction derivatives at the solution points.
pub fn radau_correction_derivs(k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (sp, _) = legendre_gauss_nodes(k)?;
    Ok(sp.iter().map(|&x| radau_correction_derivative(k, x)).unzip())
}

/// Node layout of one reference cell.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    pub degree: usize,
    pub solution_points: Vec<f64>,
    /// Standard Gauss weights on [-1, 1] (they sum to 2).
    pub gauss_weights: Vec<f64>,
    /// LGL flux points used by CPR and the compact high-order CNNW schemes.
    pub lgl_points: Vec<f64>,
    /// Gauss-weight flux points used by the second-order subcell schemes.
    pub subcell_points: Vec<f64>,
    /// Widths of the Gauss-weight subcells, equal to `gauss_weights`.
    pub subcell_widths: Vec<f64>,
}

impl NodeSet {
    pub fn new(k: usize) -> Result<Self> {
        let (sp, w) = legendre_gauss_nodes(k)?;
        let lgl = lgl_flux_points(k)?;
        let sub = gauss_weight_flux_points(k)?;
        let widths = sub.windows(2).map(|p| p[1] - p[0]).collect();
        Ok(Self {
            degree: k,
            solution_points: sp,
            gauss_weights: w,
            lgl_points: lgl,
            subcell_points: sub,
            subcell_widths: widths,
        })
    }

    pub fn n_solution(&self) -> usize {
        self.degree + 1
    }

    pub fn n_flux(&self) -> usize {
        self.degree + 2
    }

    /// Gauss weights normalised to a unit reference measure.
    pub fn unit_weights(&self) -> Vec<f64> {
        self.gauss_weights.iter().map(|w| 0.5 * w).collect()
    }
}

/// Differentiation and correction operators of one reference cell.
#[derive(Debug, Clone)]
pub struct DiffOperators {
    /// `(K+1) x (K+2)`, derivative at solution points of the Lagrange
    /// polynomial through the LGL flux points.
    pub fd5_matrix: Matrix,
    /// `(K+2) x (K+1)`, solution polynomial evaluated at the LGL flux points.
    pub sol_to_lgl: Matrix,
    /// Inverse subcell widths: FD2 gives `(F_{l+1} - F_l) * inv_widths[l]`.
    pub fd2_inv_widths: Vec<f64>,
    pub g_left: Vec<f64>,
    pub g_right: Vec<f64>,
    /// Solution polynomial evaluated at ξ = -1 and ξ = +1.
    pub extrap_left: Vec<f64>,
    pub extrap_right: Vec<f64>,
}

impl DiffOperators {
    pub fn new(nodes: &NodeSet) -> Result<Self> {
        let fd5 = differentiation_matrix(&nodes.lgl_points, &nodes.solution_points)?;
        let sol_to_lgl = interpolation_matrix(&nodes.solution_points, &nodes.lgl_points);
        let (gl, gr) = radau_correction_derivs(nodes.degree)?;
        Ok(Self {
            fd5_matrix: fd5,
            sol_to_lgl,
            fd2_inv_widths: nodes.subcell_widths.iter().map(|w| 1.0 / w).collect(),
            g_left: gl,
            g_right: gr,
            extrap_left: lagrange_weights(&nodes.solution_points, -1.0),
            extrap_right: lagrange_weights(&nodes.solution_points, 1.0),
        })
    }
}

/// Linear map between the reference square and an axis-aligned cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMap {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl CellMap {
    pub fn interval(x_min: f64, x_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min: -1.0,
            y_max: 1.0,
        }
    }

    pub fn rect(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    /// `x_ξ`.
    pub fn x_xi(&self) -> f64 {
        0.5 * (self.x_max - self.x_min)
    }

    /// `y_η`.
    pub fn y_eta(&self) -> f64 {
        0.5 * (self.y_max - self.y_min)
    }

    /// Jacobian `x_ξ y_η - x_η y_ξ`; the cross terms vanish for these maps.
    pub fn jacobian(&self) -> f64 {
        self.x_xi() * self.y_eta()
    }

    pub fn to_physical(&self, xi: f64, eta: f64) -> (f64, f64) {
        (
            self.x_min + (xi + 1.0) * self.x_xi(),
            self.y_min + (eta + 1.0) * self.y_eta(),
        )
    }

    /// Scaled metrics `(ξ̂_x, ξ̂_y, η̂_x, η̂_y) = (y_η, -x_η, -y_ξ, x_ξ)`.
    pub fn metrics(&self) -> (f64, f64, f64, f64) {
        (self.y_eta(), 0.0, 0.0, self.x_xi())
    }
}
