//! Divided differences of an admissible function at eigenvalue pairs.
//!
//! Both kernels switch to their confluent limit when the two eigenvalues are
//! closer than [`degeneracy_threshold`]. The limit is evaluated at the
//! midpoint so that the kernels stay symmetric in their arguments.

use super::AdmissibleFunction;
use crate::error::{Error, Result};

/// Relative spacing below which two eigenvalues are treated as equal.
pub const DEGENERACY_REL: f64 = 1e-7;

/// `1e−7·max(1, |a|, |b|)`.
pub fn degeneracy_threshold(a: f64, b: f64) -> f64 {
    DEGENERACY_REL * 1f64.max(a.abs()).max(b.abs())
}

pub fn is_degenerate(a: f64, b: f64) -> bool {
    (a - b).abs() < degeneracy_threshold(a, b)
}

pub(crate) fn check_unit_interval(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { value: x })
    }
}

/// First divided difference `(f(λi) − f(λj)) / (λi − λj)`, or `f′` at the
/// midpoint for (near-)equal arguments.
pub fn divided_difference(f: &AdmissibleFunction, li: f64, lj: f64) -> Result<f64> {
    check_unit_interval(li)?;
    check_unit_interval(lj)?;
    if is_degenerate(li, lj) {
        Ok(f.deriv1(0.5 * (li + lj)))
    } else {
        Ok((f.eval(li) - f.eval(lj)) / (li - lj))
    }
}

/// The off-diagonal shape coefficient
/// `−(f′(λi) − f′(λj)) / (f′(λi)·f′(λj)·(f(λi) − f(λj)))`,
/// with confluent limit `−f″/f′³`.
pub fn rho(f: &AdmissibleFunction, li: f64, lj: f64) -> Result<f64> {
    check_unit_interval(li)?;
    check_unit_interval(lj)?;
    if is_degenerate(li, lj) {
        let m = 0.5 * (li + lj);
        let d1 = f.deriv1(m);
        Ok(-f.deriv2(m) / (d1 * d1 * d1))
    } else {
        let (di, dj) = (f.deriv1(li), f.deriv1(lj));
        Ok(-(di - dj) / ((f.eval(li) - f.eval(lj)) * (di * dj)))
    }
}

/// `(f′(a) − f′(b)) / (f(a) − f(b))`, the ratio shared by `rho` and the
/// two-level closed forms, with confluent limit `f″/f′`.
pub(crate) fn derivative_ratio(f: &AdmissibleFunction, a: f64, b: f64) -> f64 {
    if is_degenerate(a, b) {
        let m = 0.5 * (a + b);
        f.deriv2(m) / f.deriv1(m)
    } else {
        (f.deriv1(a) - f.deriv1(b)) / (f.eval(a) - f.eval(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn presets() -> Vec<AdmissibleFunction> {
        vec![
            AdmissibleFunction::alpha_power(-0.5).unwrap(),
            AdmissibleFunction::alpha_power(0.5).unwrap(),
            AdmissibleFunction::log(),
            AdmissibleFunction::wigner_yanase(),
            AdmissibleFunction::identity(),
        ]
    }

    #[test]
    fn identity_kernel_is_one() {
        let f = AdmissibleFunction::identity();
        assert!((divided_difference(&f, 0.3, 0.7).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_branch_uses_derivative() {
        let f = AdmissibleFunction::alpha_power(0.0).unwrap();
        assert_eq!(divided_difference(&f, 0.25, 0.25).unwrap(), 2.0);
    }

    #[test]
    fn log_kernel_matches_hand_value() {
        // (ln 0.75 − ln 0.25)/0.5 = 2 ln 3
        let got = divided_difference(&AdmissibleFunction::log(), 0.25, 0.75).unwrap();
        assert!((got - 2.0 * 3f64.ln()).abs() < 1e-14);
        assert!((got - 2.197_224_577_336_219_4).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        let f = AdmissibleFunction::log();
        assert!(matches!(divided_difference(&f, 0.0, 0.5), Err(Error::Domain { .. })));
        assert!(matches!(divided_difference(&f, 0.5, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(rho(&f, -0.1, 0.5), Err(Error::Domain { .. })));
        assert!(rho(&f, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn wigner_yanase_rho_is_one_half() {
        let f = AdmissibleFunction::wigner_yanase();
        for &(a, b) in &[(0.1, 0.9), (0.3, 0.2), (0.5, 0.5), (0.01, 0.6)] {
            assert!((rho(&f, a, b).unwrap() - 0.5).abs() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn identity_rho_vanishes() {
        let f = AdmissibleFunction::identity();
        assert_eq!(rho(&f, 0.2, 0.6).unwrap(), 0.0);
        assert_eq!(rho(&f, 0.4, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn log_rho_degenerate_and_limit() {
        let f = AdmissibleFunction::log();
        assert!((rho(&f, 0.5, 0.5).unwrap() - 0.5).abs() < 1e-15);
        // non-degenerate branch approaching 0.5 from outside the switch
        for &e in &[1e-3, 1e-4, 1e-5] {
            let r = rho(&f, 0.5, 0.5 + e).unwrap();
            assert!((r - 0.5).abs() < 2.0 * e, "eps {e}: {r}");
        }
    }

    #[test]
    fn continuity_across_switch() {
        for f in presets() {
            for i in 1..=9 {
                let l = i as f64 / 10.0;
                let step = degeneracy_threshold(l, l) * 1.01;
                let m = divided_difference(&f, l, l + step).unwrap();
                let d = f.deriv1(l);
                assert!((m - d).abs() <= 1e-6 * d.abs(), "{f:?} at {l}");
            }
        }
    }

    #[test]
    fn kernels_are_symmetric() {
        for f in presets() {
            for &(a, b) in &[(0.1, 0.7), (0.33, 0.34), (0.5, 0.5 + 5e-8)] {
                assert_eq!(divided_difference(&f, a, b).unwrap(), divided_difference(&f, b, a).unwrap());
                assert_eq!(rho(&f, a, b).unwrap(), rho(&f, b, a).unwrap());
            }
        }
    }
}
