//! Nodal CPR solver with a priori subcell CNNW limiting for one- and
//! two-dimensional hyperbolic conservation laws, plus block-circulant
//! spectral analysis of the linear semi-discrete operators.

pub mod basis;
pub mod error;
pub mod limiter;
pub mod mesh;
pub mod nnw;
mod nnw_table;
pub mod parallel;
pub mod physics;
pub mod schemes;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
