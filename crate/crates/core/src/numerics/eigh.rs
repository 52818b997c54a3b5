//! Self-adjoint matrices and a cyclic complex Jacobi eigensolver.

use nalgebra::{Complex, DMatrix};

use super::Field;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Tolerance on `‖M − M*‖_max` accepted at construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;
const OFF_DIAGONAL_REL: f64 = 1e-14;

/// A real-symmetric or complex-Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfAdjointMatrix {
    entries: DMatrix<C64>,
    field: Field,
}

impl SelfAdjointMatrix {
    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)), Field::Real)
    }

    pub fn from_complex(m: DMatrix<C64>) -> Result<Self> {
        Self::new(m, Field::Complex)
    }

    /// Validates squareness, finiteness and self-adjointness; a `Real` field
    /// additionally requires vanishing imaginary parts.
    pub fn new(m: DMatrix<C64>, field: Field) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension { expected: m.nrows(), got: m.ncols() });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
        }
        let n = m.nrows();
        let mut dev = 0f64;
        for i in 0..n {
            for j in 0..n {
                dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
                if field == Field::Real {
                    dev = dev.max(m[(i, j)].im.abs());
                }
            }
        }
        if dev > HERMITIAN_TOL {
            return Err(Error::NotSelfAdjoint(dev));
        }
        Ok(Self { entries: m, field })
    }

    /// Diagonal matrix with the given real entries.
    pub fn diagonal(values: &[f64], field: Field) -> Self {
        let n = values.len();
        let m = DMatrix::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { C64::new(0.0, 0.0) });
        Self { entries: m, field }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }
}

/// Eigenvalues (descending) and the matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: DMatrix<C64>,
}

impl Eigh {
    /// `V·diag(λ)·V*`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        scaled * self.vectors.adjoint()
    }
}

fn off_diagonal_norm(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalises a self-adjoint matrix by cyclic Jacobi sweeps.
///
/// Each pivot first rotates the phase of the `(p, q)` entry onto the real
/// axis, then applies a real Givens rotation. Real input stays real.
pub fn eigh(m: &SelfAdjointMatrix) -> Result<Eigh> {
    let n = m.dim();
    let mut a = m.entries.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let frob = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    let mut converged = frob == 0.0;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_REL * frob {
            converged = true;
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // phase: make a[p][q] real and positive
                let e = apq / r;
                let ec = e.conj();
                for k in 0..n {
                    a[(k, q)] *= ec;
                    v[(k, q)] *= ec;
                }
                for k in 0..n {
                    a[(q, k)] *= e;
                }

                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c - vkq * s;
                    v[(k, q)] = vkp * s + vkq * c;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps, residual: off_diagonal_norm(&a) });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigh { values, vectors })
}
