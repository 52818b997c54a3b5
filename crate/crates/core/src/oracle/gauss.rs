use nalgebra::{DMatrix, DVector};

use super::{check_step, shifted, Chart};
use crate::error::{Error, Result};

fn tangents<C: Chart + ?Sized>(chart: &C, u: &[f64], h: f64) -> Result<DMatrix<f64>> {
    let (m, ambient) = (chart.dim(), chart.ambient_dim());
    let mut t = DMatrix::<f64>::zeros(ambient, m);
    for a in 0..m {
        let plus = chart.embed(&shifted(u, a, h))?;
        let minus = chart.embed(&shifted(u, a, -h))?;
        if plus.len() != ambient || minus.len() != ambient {
            return Err(Error::Dimension { expected: ambient, got: plus.len() });
        }
        for r in 0..ambient {
            t[(r, a)] = (plus[r] - minus[r]) / (2.0 * h);
        }
    }
    Ok(t)
}

/// Unit normal as the normalised generalised cross product of the tangent
/// columns, so its orientation varies smoothly along the chart.
fn unit_normal(t: &DMatrix<f64>) -> Result<DVector<f64>> {
    let (rows, m) = t.shape();
    let mut n = DVector::<f64>::zeros(rows);
    for r in 0..rows {
        let minor = t.clone().remove_row(r);
        let det = if m == 0 { 1.0 } else { minor.determinant() };
        n[r] = if r % 2 == 0 { det } else { -det };
    }
    let norm = n.norm();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::DegenerateJacobian);
    }
    Ok(n / norm)
}

/// Scalar curvature of a hypersurface in flat space via the Gauss equation.
///
/// With `S(X, Y) = −⟨∂_X N, Y⟩` expressed in an orthonormal tangent basis
/// `A₁ … A_m`, `Scal = Σₜₛ S(Aₛ,Aₛ)S(Aₜ,Aₜ) − S(Aₜ,Aₛ)S(Aₛ,Aₜ)`. Tangents
/// and the derivative of the normal are both central differences with step
/// `h`. The ambient curvature term is zero because the ambient is Euclidean.
pub fn gauss_scal_fd<C: Chart + ?Sized>(chart: &C, u: &[f64], h: f64) -> Result<f64> {
    let m = chart.dim();
    let ambient = chart.ambient_dim();
    if ambient != m + 1 {
        return Err(Error::Codimension(ambient as isize - m as isize));
    }
    if u.len() != m {
        return Err(Error::Dimension { expected: m, got: u.len() });
    }
    check_step(u, h)?;
    if !chart.contains(u) {
        return Err(Error::OutOfChart(u.to_vec()));
    }

    let t = tangents(chart, u, h)?;
    let gram = t.transpose() * &t;
    let chol = gram.cholesky().ok_or(Error::DegenerateJacobian)?;

    let mut dn = DMatrix::<f64>::zeros(ambient, m);
    for a in 0..m {
        let plus = unit_normal(&tangents(chart, &shifted(u, a, h), h)?)?;
        let minus = unit_normal(&tangents(chart, &shifted(u, a, -h), h)?)?;
        dn.set_column(a, &((plus - minus) / (2.0 * h)));
    }
    // shape[a][b] = −⟨∂_a N, T_b⟩
    let shape = -(dn.transpose() * &t);

    let l_inv = chol.l().try_inverse().ok_or(Error::DegenerateJacobian)?;
    let s = &l_inv * shape * l_inv.transpose();

    let mut scal = 0.0;
    for ti in 0..m {
        for si in 0..m {
            scal += s[(si, si)] * s[(ti, ti)] - s[(ti, si)] * s[(si, ti)];
        }
    }
    Ok(scal)
}
