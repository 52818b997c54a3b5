//! # statcurv
//!
//! Scalar curvature of classical probability simplices and quantum state
//! spaces carrying pull-back metrics.
//!
//! A state space is embedded into a flat space by a function `f` applied to
//! the probability vector (classical) or to the density matrix (quantum);
//! the Euclidean metric pulled back through that embedding is the metric.
//! Power functions give the α-geometries, `ln` the `α = 1` member, and
//! `2√x` the Wigner–Yanase metric, which is a round sphere of radius 2.
//!
//! - [`classical`]: closed-form curvature of `(Pₙ, g_α)`.
//! - [`quantum`]: closed-form curvature of real and complex `(Mₙ, g_f)` from
//!   the spectrum alone.
//! - [`oracle`]: finite-difference curvature from a metric field and from a
//!   hypersurface embedding, independent of the closed forms.
//! - [`majorization`]: the majorization order, T-transforms and chains of
//!   T-transforms between comparable distributions.
//! - [`numerics`]: admissible functions, divided differences and a Jacobi
//!   eigensolver for self-adjoint matrices.

#![forbid(unsafe_code)]

pub mod classical;
pub mod error;
pub mod majorization;
pub mod numerics;
pub mod oracle;
pub mod quantum;
pub mod sampling;

pub use classical::{scal_classical, scal_p3, ClassicalCurvatureReport, Distribution};
pub use error::{Error, Result};
pub use majorization::{apply_t_transform, is_majorized, majorization_path, MajorizationPath, TTransform};
pub use numerics::{AdmissibleFunction, Field, FunctionKind, Spectrum};
pub use quantum::{scal_m2, scal_quantum, state_dimensions, QuantumCurvatureReport, StateDimensions};
