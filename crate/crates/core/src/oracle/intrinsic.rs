use nalgebra::DMatrix;

use super::{check_step, shifted, MetricField};
use crate::error::{Error, Result};

/// Christoffel symbols `Γ[k][i][j] = Γᵏᵢⱼ` from central differences of the
/// metric.
fn christoffel<M: MetricField + ?Sized>(metric: &M, u: &[f64], h: f64) -> Result<Vec<Vec<Vec<f64>>>> {
    let m = metric.dim();
    let g = metric.at(u)?;
    let ginv = inverse_spd(g)?;
    let dg: Vec<DMatrix<f64>> = (0..m)
        .map(|c| Ok((metric.at(&shifted(u, c, h))? - metric.at(&shifted(u, c, -h))?) / (2.0 * h)))
        .collect::<Result<_>>()?;

    let mut gamma = vec![vec![vec![0.0; m]; m]; m];
    for k in 0..m {
        for i in 0..m {
            for j in i..m {
                let mut s = 0.0;
                for l in 0..m {
                    s += ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                gamma[k][i][j] = 0.5 * s;
                gamma[k][j][i] = 0.5 * s;
            }
        }
    }
    Ok(gamma)
}

fn inverse_spd(g: DMatrix<f64>) -> Result<DMatrix<f64>> {
    if g.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularMetric);
    }
    g.cholesky().map(|c| c.inverse()).ok_or(Error::SingularMetric)
}

/// Scalar curvature of a metric field at `u`, by second-order central
/// differences with step `h`.
///
/// `Rⁱⱼₖₗ = ∂ₖΓⁱₗⱼ − ∂ₗΓⁱₖⱼ + ΓⁱₖₘΓᵐₗⱼ − ΓⁱₗₘΓᵐₖⱼ`, `Scal = gʲˡ Rᵏⱼₖₗ`.
#[allow(clippy::needless_range_loop)]
pub fn intrinsic_scal_fd<M: MetricField + ?Sized>(metric: &M, u: &[f64], h: f64) -> Result<f64> {
    let m = metric.dim();
    if u.len() != m {
        return Err(Error::Dimension { expected: m, got: u.len() });
    }
    check_step(u, h)?;

    let ginv = inverse_spd(metric.at(u)?)?;
    let gamma = christoffel(metric, u, h)?;
    // dgamma[c][i][a][b] = ∂_c Γⁱ_ab
    let dgamma: Vec<Vec<Vec<Vec<f64>>>> = (0..m)
        .map(|c| {
            let plus = christoffel(metric, &shifted(u, c, h), h)?;
            let minus = christoffel(metric, &shifted(u, c, -h), h)?;
            Ok((0..m)
                .map(|i| {
                    (0..m).map(|a| (0..m).map(|b| (plus[i][a][b] - minus[i][a][b]) / (2.0 * h)).collect()).collect()
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    let riemann = |i: usize, j: usize, k: usize, l: usize| {
        let mut r = dgamma[k][i][l][j] - dgamma[l][i][k][j];
        for p in 0..m {
            r += gamma[i][k][p] * gamma[p][l][j] - gamma[i][l][p] * gamma[p][k][j];
        }
        r
    };

    let mut scal = 0.0;
    for j in 0..m {
        for l in 0..m {
            let ricci: f64 = (0..m).map(|k| riemann(k, j, k, l)).sum();
            scal += ginv[(j, l)] * ricci;
        }
    }
    Ok(scal)
}
