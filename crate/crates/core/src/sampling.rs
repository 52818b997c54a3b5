//! Random interior points for property checks and the verification suite.

use rand::Rng;

use crate::classical::Distribution;
use crate::numerics::{Field, Spectrum};

/// Uniform draw from the simplex (normalised exponentials), rejected until
/// every entry is at least `min_prob`.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize, min_prob: f64) -> Distribution {
    assert!(n >= 2 && min_prob * (n as f64) < 1.0, "no room for min_prob {min_prob} with n = {n}");
    loop {
        let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let sum: f64 = w.iter().sum();
        let p: Vec<f64> = w.iter().map(|x| x / sum).collect();
        if p.iter().all(|&x| x >= min_prob) {
            if let Ok(d) = Distribution::new(p) {
                return d;
            }
        }
    }
}

pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field, min_value: f64) -> Spectrum {
    let d = random_distribution(rng, n, min_value);
    Spectrum::new(d.into_vec(), field).expect("a distribution is a valid spectrum")
}

/// A random point of the open unit ball in `dim` dimensions with radius in
/// `[r_min, r_max]`.
pub fn random_bloch<R: Rng + ?Sized>(rng: &mut R, dim: usize, r_min: f64, r_max: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            let r = rng.gen_range(r_min..=r_max);
            return v.iter().map(|x| r * x / norm).collect();
        }
    }
}
