//! Closed-form scalar curvature of the faithful state space `(Mₙ, g_f)`.
//!
//! Everything is expressed through the spectrum of the state. With
//! `M_ii = f′(λᵢ)`, `M_iii = f″(λᵢ)/2`, `c² = Σ 1/f′(λₖ)²` and the pair
//! coefficients `ρ_ij` from [`crate::numerics::rho`], the shape operator of
//! the image hypersurface splits into a diagonal block and one eigenvalue per
//! off-diagonal direction. The four `x` terms are the pairings of those
//! blocks; real and complex state spaces differ only in how many
//! off-diagonal directions each pair contributes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{check_unit_interval, derivative_ratio, rho, AdmissibleFunction, Field, Spectrum, TRACE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumCurvatureReport {
    pub scal: f64,
    /// diagonal × diagonal
    pub x1: f64,
    /// diagonal × off-diagonal
    pub x2: f64,
    /// off-diagonal × off-diagonal, same kind
    pub x3: f64,
    /// off-diagonal real × off-diagonal imaginary
    pub x4: f64,
    /// `sqrt(Tr f′(D)⁻²)`
    pub c: f64,
    pub field: Field,
}

/// Combines the `x` terms the way the given field requires.
pub fn combine_terms(field: Field, x1: f64, x2: f64, x3: f64, x4: f64) -> f64 {
    match field {
        Field::Real => x1 + 2.0 * x2 + x3,
        Field::Complex => x1 + 4.0 * x2 + 2.0 * x3 + 2.0 * x4,
    }
}

/// Manifold dimensions of the real and complex state spaces of `n × n`
/// density matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StateDimensions {
    pub n: usize,
    pub d_real: usize,
    pub d_complex: usize,
}

impl StateDimensions {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("matrix size must be at least 2, got {n}")));
        }
        Ok(Self { n, d_real: (n - 1) * (n + 2) / 2, d_complex: n * n - 1 })
    }

    pub fn for_field(&self, field: Field) -> usize {
        match field {
            Field::Real => self.d_real,
            Field::Complex => self.d_complex,
        }
    }
}

pub fn state_dimensions(n: usize, field: Field) -> Result<usize> {
    Ok(StateDimensions::new(n)?.for_field(field))
}

/// Scalar curvature of `(Mₙ, g_f)` at any state with spectrum `spec`.
pub fn scal_quantum(f: &AdmissibleFunction, spec: &Spectrum) -> Result<QuantumCurvatureReport> {
    let lam = spec.values();
    let n = lam.len();
    for &l in lam {
        check_unit_interval(l)?;
        f.check_admissible_at(l)?;
    }

    let m1: Vec<f64> = lam.iter().map(|&l| f.deriv1(l)).collect();
    let m2: Vec<f64> = lam.iter().map(|&l| 0.5 * f.deriv2(l)).collect();
    let c2: f64 = m1.iter().map(|d| 1.0 / (d * d)).sum();

    // w = M_iii / M_ii³, u = 1/(c² M_ii²)
    let w: Vec<f64> = m1.iter().zip(&m2).map(|(d, h)| h / (d * d * d)).collect();
    let u: Vec<f64> = m1.iter().map(|d| 1.0 / (c2 * d * d)).collect();

    // Σu = 1, so 1 − u_i − u_k is taken as the sum over the other indices
    let others = |skip: &[usize]| -> f64 { (0..n).filter(|r| !skip.contains(r)).map(|r| u[r]).sum() };
    let mut x1 = 0.0;
    for i in 0..n {
        for k in (i + 1)..n {
            x1 += 2.0 * w[i] * w[k] * others(&[i, k]);
        }
    }
    x1 *= 4.0 / c2;

    let mut rho_sum = 0.0;
    let mut rho_sq = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let r = rho(f, lam[i], lam[j])?;
            rho_sum += r;
            rho_sq += r * r;
        }
    }

    let trace_diag: f64 = (0..n).map(|i| w[i] * others(&[i])).sum();
    let x2 = -2.0 / c2 * trace_diag * rho_sum;
    let x3 = (rho_sum * rho_sum - rho_sq) / c2;
    let x4 = rho_sum * rho_sum / c2;

    let field = spec.field();
    let scal = combine_terms(field, x1, x2, x3, x4);
    Ok(QuantumCurvatureReport { scal, x1, x2, x3, x4, c: c2.sqrt(), field })
}

/// Two-level closed form. Only the `x₂` and `x₄` terms survive for `2 × 2`
/// states; they are evaluated directly from `f`, `f′`, `f″` at the two
/// eigenvalues.
pub fn scal_m2(f: &AdmissibleFunction, lambda1: f64, lambda2: f64, field: Field) -> Result<f64> {
    check_unit_interval(lambda1)?;
    check_unit_interval(lambda2)?;
    if (lambda1 + lambda2 - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidSpectrum(format!("eigenvalues {lambda1} and {lambda2} do not sum to 1")));
    }
    f.check_admissible_at(lambda1)?;
    f.check_admissible_at(lambda2)?;

    let (d1, d2) = (f.deriv1(lambda1), f.deriv1(lambda2));
    let s = d1 * d1 + d2 * d2;
    let q = derivative_ratio(f, lambda1, lambda2);
    let x2 = d1 * d2 / (s * s) * (f.deriv2(lambda1) / d1 + f.deriv2(lambda2) / d2) * q;
    let x4 = q * q / s;
    Ok(match field {
        Field::Real => 2.0 * x2,
        Field::Complex => 4.0 * x2 + 2.0 * x4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{scal_classical, Distribution};

    fn spec(v: &[f64], field: Field) -> Spectrum {
        Spectrum::new(v.to_vec(), field).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn dimensions() {
        assert_eq!(state_dimensions(2, Field::Real).unwrap(), 2);
        assert_eq!(state_dimensions(2, Field::Complex).unwrap(), 3);
        assert_eq!(state_dimensions(3, Field::Complex).unwrap(), 8);
        assert_eq!(state_dimensions(3, Field::Real).unwrap(), 5);
        assert!(state_dimensions(1, Field::Real).is_err());
    }

    #[test]
    fn wigner_yanase_spheres() {
        let f = AdmissibleFunction::wigner_yanase();
        assert!(rel(scal_quantum(&f, &spec(&[0.7, 0.3], Field::Complex)).unwrap().scal, 1.5) < 1e-12);
        assert!(rel(scal_quantum(&f, &spec(&[0.7, 0.3], Field::Real)).unwrap().scal, 0.5) < 1e-12);
        let r = scal_quantum(&f, &spec(&[0.5, 0.3, 0.2], Field::Complex)).unwrap();
        assert!(rel(r.scal, 14.0) < 1e-12);
        assert!(rel(r.c, 1.0) < 1e-12);
        // term values for n = 3
        assert!(rel(r.x1, 0.5) < 1e-12);
        assert!(rel(r.x2, 1.5) < 1e-12);
        assert!(rel(r.x3, 1.5) < 1e-12);
        assert!(rel(r.x4, 2.25) < 1e-12);
    }

    #[test]
    fn identity_is_flat() {
        let f = AdmissibleFunction::identity();
        for field in [Field::Real, Field::Complex] {
            let r = scal_quantum(&f, &spec(&[0.5, 0.3, 0.2], field)).unwrap();
            assert_eq!(r.scal, 0.0);
        }
    }

    #[test]
    fn diagonal_term_is_classical_curvature() {
        let f = AdmissibleFunction::alpha_power(0.5).unwrap();
        let r = scal_quantum(&f, &spec(&[0.5, 0.3, 0.2], Field::Real)).unwrap();
        let c = scal_classical(0.5, &Distribution::new(vec![0.5, 0.3, 0.2]).unwrap()).unwrap();
        assert!(rel(r.x1, c.scal) < 1e-12);
        assert!(rel(r.c, c.c) < 1e-12);
    }

    #[test]
    fn report_assembly() {
        let f = AdmissibleFunction::log();
        for field in [Field::Real, Field::Complex] {
            let r = scal_quantum(&f, &spec(&[0.4, 0.35, 0.25], field)).unwrap();
            let expected = match field {
                Field::Real => r.x1 + 2.0 * r.x2 + r.x3,
                Field::Complex => r.x1 + 4.0 * r.x2 + 2.0 * r.x3 + 2.0 * r.x4,
            };
            assert_eq!(r.scal, expected);
            assert_eq!(r.field, field);
        }
    }

    #[test]
    fn two_level_closed_form() {
        let wy = AdmissibleFunction::wigner_yanase();
        assert!(rel(scal_m2(&wy, 0.7, 0.3, Field::Complex).unwrap(), 1.5) < 1e-12);
        assert_eq!(scal_m2(&AdmissibleFunction::identity(), 0.6, 0.4, Field::Real).unwrap(), 0.0);
        let log = AdmissibleFunction::log();
        for field in [Field::Real, Field::Complex] {
            let a = scal_m2(&log, 0.75, 0.25, field).unwrap();
            let b = scal_quantum(&log, &spec(&[0.75, 0.25], field)).unwrap().scal;
            assert!(rel(a, b) < 1e-12, "{a} vs {b}");
        }
        assert!(scal_m2(&log, 0.7, 0.4, Field::Real).is_err());
        assert!(scal_m2(&log, 1.0, 0.0, Field::Real).is_err());
    }

    #[test]
    fn two_level_terms_vanish() {
        let r = scal_quantum(&AdmissibleFunction::log(), &spec(&[0.8, 0.2], Field::Complex)).unwrap();
        assert!(r.x1.abs() < 1e-12);
        assert!(r.x3.abs() < 1e-12);
    }

    #[test]
    fn degenerate_spectrum_is_continuous() {
        let f = AdmissibleFunction::alpha_power(-0.5).unwrap();
        for field in [Field::Real, Field::Complex] {
            let at = scal_quantum(&f, &spec(&[0.5, 0.5], field)).unwrap().scal;
            let near = scal_quantum(&f, &spec(&[0.5 + 1e-5, 0.5 - 1e-5], field)).unwrap().scal;
            assert!(rel(near, at) < 1e-3);
        }
    }

    #[test]
    fn rejects_vanishing_derivative() {
        let f =
            AdmissibleFunction::custom("bad", |x| (x - 0.3).powi(3), |x| 3.0 * (x - 0.3).powi(2), |x| 6.0 * (x - 0.3));
        assert!(matches!(scal_quantum(&f, &spec(&[0.7, 0.3], Field::Real)), Err(Error::NotAdmissible(_))));
    }
}
