use nalgebra::DMatrix;

use super::QubitChart;
use crate::error::{Error, Result};
use crate::numerics::{divided_difference, eigh, AdmissibleFunction, Field, SelfAdjointMatrix, C64};

/// Pull-back of the α-geometry to simplex coordinates `u = (θ₁ … θₙ₋₁)`:
/// `g_ab = Σₖ θₖ^β (∂θₖ/∂u_a)(∂θₖ/∂u_b)` with `β = −α − 1`. The chart
/// Jacobian is the identity stacked on a row of `−1`s, so
/// `g_ab = θ_a^β δ_ab + θₙ^β` exactly.
pub fn pullback_metric_classical(alpha: f64, u: &[f64], n: usize) -> Result<DMatrix<f64>> {
    if n < 2 || u.len() + 1 != n {
        return Err(Error::Dimension { expected: n.saturating_sub(1), got: u.len() });
    }
    let last = 1.0 - u.iter().sum::<f64>();
    if !(last > 0.0 && u.iter().all(|&t| t > 0.0)) {
        return Err(Error::OutOfChart(u.to_vec()));
    }
    let beta = -alpha - 1.0;
    let tail = last.powf(beta);
    let m = n - 1;
    Ok(DMatrix::from_fn(m, m, |a, b| if a == b { u[a].powf(beta) + tail } else { tail }))
}

/// `g_ab = Tr(df(D)(X_a)·df(D)(X_b))` for the given tangent directions.
///
/// `df(D)(X)` is formed in the eigenbasis of `D` as the Hadamard product of
/// the divided-difference kernel `M_ij` with `V*XV`.
pub fn pullback_metric_at_state(
    f: &AdmissibleFunction,
    d: &SelfAdjointMatrix,
    tangents: &[SelfAdjointMatrix],
) -> Result<DMatrix<f64>> {
    let e = eigh(d)?;
    let n = d.dim();
    let mut kernel = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            kernel[(i, j)] = divided_difference(f, e.values[i], e.values[j])?;
        }
    }
    let vh = e.vectors.adjoint();
    let images: Vec<DMatrix<C64>> = tangents
        .iter()
        .map(|x| {
            if x.dim() != n {
                return Err(Error::Dimension { expected: n, got: x.dim() });
            }
            let mut y = &vh * x.entries() * &e.vectors;
            for i in 0..n {
                for j in 0..n {
                    y[(i, j)] *= kernel[(i, j)];
                }
            }
            Ok(y)
        })
        .collect::<Result<_>>()?;

    let m = tangents.len();
    let mut g = DMatrix::<f64>::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += (images[a][(i, j)] * images[b][(j, i)]).re;
                }
            }
            g[(a, b)] = s;
            g[(b, a)] = s;
        }
    }
    Ok(g)
}

/// Pull-back metric of `D ↦ f(D)` on the two-level Bloch chart.
pub fn pullback_metric_quantum(f: &AdmissibleFunction, u: &[f64], field: Field) -> Result<DMatrix<f64>> {
    let chart = QubitChart::new(f.clone(), field);
    let d = chart.state(u)?;
    pullback_metric_at_state(f, &d, &chart.tangents())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_classical_metric() {
        let g = pullback_metric_classical(-1.0, &[0.2, 0.3, 0.1], 4).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(g[(a, b)], if a == b { 2.0 } else { 1.0 });
            }
        }
    }

    #[test]
    fn one_dimensional_classical_metric() {
        let (alpha, t) = (0.7, 0.35);
        let g = pullback_metric_classical(alpha, &[t], 2).unwrap();
        let beta = -alpha - 1.0;
        assert!((g[(0, 0)] - (t.powf(beta) + (1.0 - t).powf(beta))).abs() < 1e-13);
    }

    #[test]
    fn sphere_classical_metric_at_uniform() {
        let g = pullback_metric_classical(0.0, &[1.0 / 3.0, 1.0 / 3.0], 3).unwrap();
        assert!((g[(0, 0)] - 6.0).abs() < 1e-13);
        assert!((g[(0, 1)] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn classical_metric_domain() {
        assert!(matches!(pullback_metric_classical(0.0, &[0.6, 0.5], 3), Err(Error::OutOfChart(_))));
        assert!(pullback_metric_classical(0.0, &[0.6], 3).is_err());
    }

    #[test]
    fn identity_gives_trace_gram() {
        let chart = QubitChart::new(AdmissibleFunction::identity(), Field::Complex);
        let g = pullback_metric_quantum(&AdmissibleFunction::identity(), &[0.1, -0.3, 0.4], Field::Complex).unwrap();
        let t = chart.tangents();
        for a in 0..3 {
            for b in 0..3 {
                let tr = (t[a].entries() * t[b].entries()).trace().re;
                assert!((g[(a, b)] - tr).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn diagonal_states_reproduce_classical_metric() {
        let alpha = 0.5;
        let f = AdmissibleFunction::alpha(alpha).unwrap();
        let theta = [0.5, 0.3, 0.2];
        let d = SelfAdjointMatrix::diagonal(&theta, Field::Real);
        // tangents E_kk − E_nn
        let tangents: Vec<_> = (0..2)
            .map(|k| {
                let mut v = [0.0; 3];
                v[k] = 1.0;
                v[2] = -1.0;
                SelfAdjointMatrix::diagonal(&v, Field::Real)
            })
            .collect();
        let gq = pullback_metric_at_state(&f, &d, &tangents).unwrap();
        let gc = pullback_metric_classical(alpha, &theta[..2], 3).unwrap();
        assert!((gq - gc).abs().max() < 1e-12);
    }
}
