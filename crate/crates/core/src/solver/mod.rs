//! Time integration, benchmark problems, error norms and the conservation
//! audit.

pub mod cases;
pub mod conservation;
pub mod driver;
pub mod exact_riemann;
pub mod norms;
pub mod operator;
pub mod rk3;

pub use cases::{CaseKind, CaseParams};
pub use driver::{run_case, RunOutput, RunSpec, SchemeChoice, TimeControl, TroubledSample};
pub use norms::{convergence_table, nodal_norms, ConvergenceRow, ErrorNorms};
pub use operator::Discretization;
