//! Shared numeric substrate: admissible functions, divided differences and
//! the self-adjoint eigensolver.

mod admissible;
mod divided;
mod eigh;
mod spectrum;

pub use admissible::{AdmissibleFunction, FunctionKind};
pub(crate) use divided::{check_unit_interval, derivative_ratio};
pub use divided::{degeneracy_threshold, divided_difference, is_degenerate, rho, DEGENERACY_REL};
pub use eigh::{eigh, Eigh, SelfAdjointMatrix, C64, HERMITIAN_TOL};
pub use spectrum::{Field, Spectrum, TRACE_TOL};
