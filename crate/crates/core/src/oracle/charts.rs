use nalgebra::{DMatrix, DVector};

use super::{metric, Chart, MetricField};
use crate::error::{Error, Result};
use crate::numerics::{eigh, AdmissibleFunction, Field, SelfAdjointMatrix, C64};

/// The simplex `Pₙ` in coordinates `θ₁ … θₙ₋₁` (with `θₙ = 1 − Σθᵢ`),
/// embedded by the α-geometry map and carrying its pull-back metric.
#[derive(Debug, Clone)]
pub struct SimplexChart {
    n: usize,
    alpha: f64,
    f: AdmissibleFunction,
}

impl SimplexChart {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("simplex needs n >= 2, got {n}")));
        }
        Ok(Self { n, alpha, f: AdmissibleFunction::alpha(alpha)? })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Full probability vector for chart point `u`.
    pub fn probabilities(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.n - 1 {
            return Err(Error::Dimension { expected: self.n - 1, got: u.len() });
        }
        let mut theta = u.to_vec();
        theta.push(1.0 - u.iter().sum::<f64>());
        if theta.iter().all(|&t| t > 0.0 && t < 1.0) {
            Ok(theta)
        } else {
            Err(Error::OutOfChart(u.to_vec()))
        }
    }

    /// Chart point of a probability vector (drops the last entry).
    pub fn point(theta: &[f64]) -> Vec<f64> {
        theta[..theta.len() - 1].to_vec()
    }
}

impl Chart for SimplexChart {
    fn dim(&self) -> usize {
        self.n - 1
    }

    fn ambient_dim(&self) -> usize {
        self.n
    }

    fn contains(&self, u: &[f64]) -> bool {
        self.probabilities(u).is_ok()
    }

    fn embed(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.probabilities(u)?.iter().map(|&t| self.f.eval(t)).collect())
    }

    fn boundary_distance(&self, u: &[f64]) -> f64 {
        self.probabilities(u).map(|t| t.iter().copied().fold(f64::INFINITY, f64::min)).unwrap_or(0.0)
    }
}

impl MetricField for SimplexChart {
    fn dim(&self) -> usize {
        self.n - 1
    }

    fn at(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        metric::pullback_metric_classical(self.alpha, u, self.n)
    }

    fn boundary_distance(&self, u: &[f64]) -> f64 {
        Chart::boundary_distance(self, u)
    }
}

fn pauli(axis: usize) -> DMatrix<C64> {
    let (z, o, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
    match axis {
        0 => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        1 => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        _ => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Two-level states in Cartesian Bloch coordinates,
/// `D(u) = ½(I + Σ uₐ σₐ)` with `|u| < 1`.
///
/// The real chart uses `(σx, σz)`; the complex chart `(σx, σy, σz)`. The
/// embedding is `D ↦ f(D)` written in orthonormal coordinates of the
/// self-adjoint matrices, so the ambient space has one more dimension than
/// the chart.
#[derive(Debug, Clone)]
pub struct QubitChart {
    f: AdmissibleFunction,
    field: Field,
}

impl QubitChart {
    pub fn new(f: AdmissibleFunction, field: Field) -> Self {
        Self { f, field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn function(&self) -> &AdmissibleFunction {
        &self.f
    }

    fn axes(&self) -> &'static [usize] {
        match self.field {
            Field::Real => &[0, 2],
            Field::Complex => &[0, 1, 2],
        }
    }

    /// Constant tangent vectors `∂D/∂uₐ = σₐ/2`.
    pub fn tangents(&self) -> Vec<SelfAdjointMatrix> {
        self.axes()
            .iter()
            .map(|&a| {
                SelfAdjointMatrix::new(pauli(a) * C64::new(0.5, 0.0), self.field)
                    .expect("Pauli matrices are self-adjoint")
            })
            .collect()
    }

    pub fn state(&self, u: &[f64]) -> Result<SelfAdjointMatrix> {
        let axes = self.axes();
        if u.len() != axes.len() {
            return Err(Error::Dimension { expected: axes.len(), got: u.len() });
        }
        if !self.contains(u) {
            return Err(Error::OutOfChart(u.to_vec()));
        }
        let mut d = DMatrix::<C64>::identity(2, 2) * C64::new(0.5, 0.0);
        for (&a, &x) in axes.iter().zip(u) {
            d += pauli(a) * C64::new(0.5 * x, 0.0);
        }
        SelfAdjointMatrix::new(d, self.field)
    }

    /// A chart point whose state has eigenvalues `(1 ± r)/2`, pointing along
    /// the given direction.
    pub fn point_with_radius(&self, r: f64, direction: &[f64]) -> Vec<f64> {
        let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
        direction.iter().map(|x| r * x / norm).collect()
    }
}

impl Chart for QubitChart {
    fn dim(&self) -> usize {
        self.axes().len()
    }

    fn ambient_dim(&self) -> usize {
        self.axes().len() + 1
    }

    fn contains(&self, u: &[f64]) -> bool {
        u.len() == self.axes().len() && u.iter().all(|x| x.is_finite()) && u.iter().map(|x| x * x).sum::<f64>() < 1.0
    }

    fn embed(&self, u: &[f64]) -> Result<Vec<f64>> {
        let d = self.state(u)?;
        Ok(sa_coordinates(&matrix_function(&self.f, &d)?, self.field))
    }

    fn boundary_distance(&self, u: &[f64]) -> f64 {
        1.0 - u.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl MetricField for QubitChart {
    fn dim(&self) -> usize {
        self.axes().len()
    }

    fn at(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        metric::pullback_metric_quantum(&self.f, u, self.field)
    }

    fn boundary_distance(&self, u: &[f64]) -> f64 {
        Chart::boundary_distance(self, u)
    }
}

/// `f(D) = V f(Λ) V*`.
pub fn matrix_function(f: &AdmissibleFunction, d: &SelfAdjointMatrix) -> Result<DMatrix<C64>> {
    let e = eigh(d)?;
    let n = d.dim();
    let mut scaled = e.vectors.clone();
    for (j, &l) in e.values.iter().enumerate() {
        crate::numerics::check_unit_interval(l)?;
        let fl = f.eval(l);
        for i in 0..n {
            scaled[(i, j)] *= fl;
        }
    }
    Ok(scaled * e.vectors.adjoint())
}

/// Coordinates of a self-adjoint matrix in an orthonormal basis for
/// `⟨X, Y⟩ = Tr XY`: the diagonal, then `√2·Re` of the upper triangle, then
/// (complex field only) `√2·Im` of the upper triangle.
pub fn sa_coordinates(m: &DMatrix<C64>, field: Field) -> Vec<f64> {
    let n = m.nrows();
    let s = std::f64::consts::SQRT_2;
    let mut out: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(s * m[(i, j)].re);
        }
    }
    if field == Field::Complex {
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(s * m[(i, j)].im);
            }
        }
    }
    out
}

/// Re-labels the coordinates of an inner chart or metric: coordinate `i` of
/// the wrapper is coordinate `perm[i]` of the inner object.
#[derive(Debug, Clone)]
pub struct Permuted<T> {
    inner: T,
    perm: Vec<usize>,
}

impl<T> Permuted<T> {
    pub fn new(inner: T, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Self { inner, perm })
    }

    /// Inner coordinates of wrapper point `v`.
    pub fn to_inner(&self, v: &[f64]) -> Vec<f64> {
        let mut u = vec![0.0; v.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            u[p] = v[i];
        }
        u
    }

    /// Wrapper coordinates of inner point `u`.
    pub fn from_inner(&self, u: &[f64]) -> Vec<f64> {
        self.perm.iter().map(|&p| u[p]).collect()
    }
}

impl<T: Chart> Chart for Permuted<T> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn contains(&self, u: &[f64]) -> bool {
        u.len() == self.perm.len() && self.inner.contains(&self.to_inner(u))
    }

    fn embed(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.perm.len() {
            return Err(Error::Dimension { expected: self.perm.len(), got: u.len() });
        }
        self.inner.embed(&self.to_inner(u))
    }

    fn boundary_distance(&self, u: &[f64]) -> f64 {
        self.inner.boundary_distance(&self.to_inner(u))
    }
}

impl<T: MetricField> MetricField for Permuted<T> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn at(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        if u.len() != self.perm.len() {
            return Err(Error::Dimension { expected: self.perm.len(), got: u.len() });
        }
        let g = self.inner.at(&self.to_inner(u))?;
        let m = self.perm.len();
        Ok(DMatrix::from_fn(m, m, |i, j| g[(self.perm[i], self.perm[j])]))
    }

    fn boundary_distance(&self, u: &[f64]) -> f64 {
        self.inner.boundary_distance(&self.to_inner(u))
    }
}

/// A metric given by a closure.
pub struct FnMetric<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> DMatrix<f64>> FnMetric<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64]) -> DMatrix<f64>> MetricField for FnMetric<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn at(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        Ok((self.f)(u))
    }
}

/// An embedding given by a closure, defined everywhere.
pub struct FnChart<F> {
    dim: usize,
    ambient: usize,
    f: F,
}

impl<F: Fn(&[f64]) -> DVector<f64>> FnChart<F> {
    pub fn new(dim: usize, ambient: usize, f: F) -> Self {
        Self { dim, ambient, f }
    }
}

impl<F: Fn(&[f64]) -> DVector<f64>> Chart for FnChart<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn contains(&self, u: &[f64]) -> bool {
        u.len() == self.dim
    }

    fn embed(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok((self.f)(u).iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_chart_domain() {
        let c = SimplexChart::new(3, 0.5).unwrap();
        assert!(c.contains(&[0.2, 0.3]));
        assert!(!c.contains(&[0.6, 0.5]));
        assert!(!c.contains(&[0.2]));
        assert!(matches!(c.embed(&[0.0, 0.3]), Err(Error::OutOfChart(_))));
        assert_eq!(Chart::dim(&c), 2);
        assert_eq!(c.ambient_dim(), 3);
    }

    #[test]
    fn qubit_state_has_bloch_spectrum() {
        let c = QubitChart::new(AdmissibleFunction::log(), Field::Complex);
        let u = c.point_with_radius(0.6, &[1.0, -2.0, 0.5]);
        let e = eigh(&c.state(&u).unwrap()).unwrap();
        assert!((e.values[0] - 0.8).abs() < 1e-14);
        assert!((e.values[1] - 0.2).abs() < 1e-14);
        assert!(!c.contains(&[0.8, 0.6, 0.1]));
    }

    #[test]
    fn sa_coordinates_are_isometric() {
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.3, 0.0), C64::new(0.1, -0.2), C64::new(0.1, 0.2), C64::new(-0.4, 0.0)],
        );
        let b = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.5, 0.0), C64::new(-0.3, 0.7), C64::new(-0.3, -0.7), C64::new(0.2, 0.0)],
        );
        let tr = (&a * &b).trace().re;
        let (ca, cb) = (sa_coordinates(&a, Field::Complex), sa_coordinates(&b, Field::Complex));
        let dot: f64 = ca.iter().zip(&cb).map(|(x, y)| x * y).sum();
        assert!((tr - dot).abs() < 1e-15);
    }

    #[test]
    fn matrix_function_of_diagonal_state() {
        let d = SelfAdjointMatrix::diagonal(&[0.7, 0.3], Field::Real);
        let m = matrix_function(&AdmissibleFunction::log(), &d).unwrap();
        assert!((m[(0, 0)].re - 0.7f64.ln()).abs() < 1e-15);
        assert!((m[(1, 1)].re - 0.3f64.ln()).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn permutation_validation() {
        let c = SimplexChart::new(3, 0.0).unwrap();
        assert!(Permuted::new(c.clone(), vec![0, 0]).is_err());
        let p = Permuted::new(c, vec![1, 0]).unwrap();
        assert_eq!(p.to_inner(&[0.1, 0.2]), vec![0.2, 0.1]);
        assert_eq!(p.from_inner(&[0.2, 0.1]), vec![0.1, 0.2]);
    }
}
