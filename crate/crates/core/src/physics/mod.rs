//! Conservation laws, characteristic decompositions and the Lax-Friedrichs
//! numerical flux.

mod advection;
mod euler;
mod riemann;

pub use advection::Advection;
pub use euler::{roe_average, Euler1d, Euler2d, RoeAverage, GAMMA};
pub use riemann::{lax_friedrichs, lax_friedrichs_checked};

/// Coordinate direction of a flux or a line sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    /// Unit normal `(nx, ny)`.
    pub fn normal(self) -> (f64, f64) {
        match self {
            Axis::X => (1.0, 0.0),
            Axis::Y => (0.0, 1.0),
        }
    }
}

/// Left and right eigenvector matrices of a flux Jacobian, row-major.
///
/// `left` rows are left eigenvectors, `right` columns are right eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharBasis<const N: usize> {
    pub left: [[f64; N]; N],
    pub right: [[f64; N]; N],
}

impl<const N: usize> CharBasis<N> {
    pub fn identity() -> Self {
        let mut m = [[0.0; N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { left: m, right: m }
    }

    #[inline]
    pub fn to_characteristic(&self, u: &[f64; N]) -> [f64; N] {
        mat_vec(&self.left, u)
    }

    #[inline]
    pub fn from_characteristic(&self, w: &[f64; N]) -> [f64; N] {
        mat_vec(&self.right, w)
    }
}

#[inline]
fn mat_vec<const N: usize>(m: &[[f64; N]; N], v: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        let mut s = 0.0;
        for j in 0..N {
            s += m[i][j] * v[j];
        }
        out[i] = s;
    }
    out
}

/// A hyperbolic system with `N` conserved components.
pub trait ConservationLaw<const N: usize>: Clone + Send + Sync {
    fn name(&self) -> &'static str;

    /// Physical flux in direction `axis`.
    fn flux(&self, u: &[f64; N], axis: Axis) -> [f64; N];

    /// Largest characteristic speed magnitude in direction `axis`.
    fn max_wave_speed(&self, u: &[f64; N], axis: Axis) -> f64;

    /// Reject non-physical states with a human-readable reason.
    fn check_state(&self, u: &[f64; N]) -> std::result::Result<(), String>;

    fn to_primitive(&self, u: &[f64; N]) -> [f64; N];

    fn from_primitive(&self, v: &[f64; N]) -> [f64; N];

    /// Eigenvectors of the flux Jacobian linearised between two states.
    fn characteristic_basis(&self, a: &[f64; N], b: &[f64; N], axis: Axis) -> CharBasis<N>;

    /// Scalar fed to the troubled-cell indicator.
    fn indicator_quantity(&self, u: &[f64; N]) -> f64;

    /// Indicator quantity averaged between two states at an interface.
    fn interface_average(&self, a: &[f64; N], b: &[f64; N]) -> f64;

    /// Mirror image across a wall normal to `axis`.
    fn reflect(&self, u: &[f64; N], axis: Axis) -> [f64; N];

    /// Density-like component used by conservation audits.
    fn density_index(&self) -> usize {
        0
    }
}
