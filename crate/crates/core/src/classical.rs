//! Closed-form scalar curvature of the probability simplex under the
//! α-geometry.

use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest admissible probability; the simplex is open and the curvature
/// blows up at the boundary for `α < −1`.
pub const MIN_PROB: f64 = 1e-12;
/// Absolute tolerance on `Σθ = 1`.
pub const SUM_TOL: f64 = 1e-12;

/// A strictly positive probability vector on `n ≥ 2` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidDistribution(format!("need at least 2 outcomes, got {}", probs.len())));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= MIN_PROB)) {
            return Err(Error::InvalidDistribution(format!("entry {p} is not a positive probability")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
        }
        Ok(Self { probs })
    }

    /// Rescales positive weights to sum to one, then validates.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
        }
        Self::new(weights.into_iter().map(|w| w / sum).collect())
    }

    /// Uniform distribution on `n` points.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalCurvatureReport {
    pub scal: f64,
    /// `sqrt(Σ θₖ^(α+1))`
    pub c: f64,
    pub alpha: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")))
    }
}

/// Scalar curvature of `(Pₙ, g_α)` at `theta`. Valid for every real α,
/// including the logarithmic case `α = 1`.
pub fn scal_classical(alpha: f64, theta: &Distribution) -> Result<ClassicalCurvatureReport> {
    check_alpha(alpha)?;
    let p = theta.probs();
    let pow_a: Vec<f64> = p.iter().map(|t| t.powf(alpha)).collect();
    let pow_a1: Vec<f64> = p.iter().map(|t| t.powf(alpha + 1.0)).collect();
    let c2: f64 = pow_a1.iter().sum();

    // 1 − (u_t + u_s)/c² is summed as the remaining u_r/c², which avoids
    // cancellation when one coordinate dominates
    let n = p.len();
    let mut sum = 0.0;
    for t in 0..n {
        for s in (t + 1)..n {
            let rest: f64 = (0..n).filter(|&r| r != t && r != s).map(|r| pow_a1[r]).sum();
            sum += 2.0 * pow_a[t] * pow_a[s] * rest / c2;
        }
    }

    let scal = (1.0 + alpha).powi(2) / (4.0 * c2) * sum;
    Ok(ClassicalCurvatureReport { scal, c: c2.sqrt(), alpha })
}

/// The three-outcome specialisation
/// `((1+α)²/2)·(θ₁θ₂θ₃)^α / (Σ θₖ^(α+1))²`.
pub fn scal_p3(alpha: f64, theta: &Distribution) -> Result<f64> {
    check_alpha(alpha)?;
    if theta.len() != 3 {
        return Err(Error::Dimension { expected: 3, got: theta.len() });
    }
    let p = theta.probs();
    let num = (p[0] * p[1] * p[2]).powf(alpha);
    let den: f64 = p.iter().map(|t| t.powf(alpha + 1.0)).sum();
    Ok(0.5 * (1.0 + alpha).powi(2) * num / (den * den))
}
