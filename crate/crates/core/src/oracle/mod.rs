//! Finite-difference differential geometry used to cross-check the closed
//! forms.
//!
//! Two independent routes compute the scalar curvature at a chart point:
//!
//! * [`intrinsic_scal_fd`] differentiates a [`MetricField`] twice (metric →
//!   Christoffel symbols → Riemann tensor → double trace);
//! * [`gauss_scal_fd`] differentiates a codimension-one embedding ([`Chart`])
//!   into flat Euclidean space and applies the Gauss equation to the second
//!   fundamental form of the unit normal.
//!
//! Neither route looks at eigenvalue formulas: the quantum metric and
//! embedding are rebuilt from an eigendecomposition of the state at every
//! evaluation point.

mod charts;
mod gauss;
mod intrinsic;
mod metric;

use nalgebra::DMatrix;

use crate::error::Result;

pub use charts::{matrix_function, sa_coordinates, FnChart, FnMetric, Permuted, QubitChart, SimplexChart};
pub use gauss::gauss_scal_fd;
pub use intrinsic::intrinsic_scal_fd;
pub use metric::{pullback_metric_at_state, pullback_metric_classical, pullback_metric_quantum};

/// Base relative finite-difference step.
pub const BASE_STEP: f64 = 1e-4;
/// The intrinsic route differences the metric twice, so roundoff grows like
/// `ε/h²`; it takes a larger base step than the Gauss route.
pub const INTRINSIC_BASE_STEP: f64 = 5e-4;

/// `BASE_STEP` scaled down by the distance to the domain boundary.
pub fn default_step(boundary_distance: f64) -> f64 {
    BASE_STEP * boundary_distance.min(1.0)
}

/// A coordinate patch `u ∈ ℝᵐ ↦ Φ(u)` into flat Euclidean space.
///
/// The ambient inner product is the standard one on the returned
/// coordinates, so the ambient space is flat by construction.
pub trait Chart {
    fn dim(&self) -> usize;
    fn ambient_dim(&self) -> usize;
    fn contains(&self, u: &[f64]) -> bool;
    fn embed(&self, u: &[f64]) -> Result<Vec<f64>>;

    /// Distance to the edge of the domain, in the chart's natural scale.
    fn boundary_distance(&self, _u: &[f64]) -> f64 {
        1.0
    }

    fn default_step(&self, u: &[f64]) -> f64 {
        default_step(self.boundary_distance(u))
    }
}

/// A Riemannian metric in coordinates.
pub trait MetricField {
    fn dim(&self) -> usize;
    fn at(&self, u: &[f64]) -> Result<DMatrix<f64>>;

    fn boundary_distance(&self, _u: &[f64]) -> f64 {
        1.0
    }

    fn default_step(&self, u: &[f64]) -> f64 {
        INTRINSIC_BASE_STEP * self.boundary_distance(u).min(1.0)
    }
}

pub(crate) fn check_step(u: &[f64], h: f64) -> Result<()> {
    use crate::error::Error;
    if !(h.is_finite() && h > 0.0) || u.iter().any(|&x| x + h == x || x - h == x) {
        return Err(Error::Step(h));
    }
    Ok(())
}

pub(crate) fn shifted(u: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let mut v = u.to_vec();
    v[axis] += delta;
    v
}
