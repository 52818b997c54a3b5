//! Randomized agreement checks between the closed forms, the two
//! finite-difference oracles, and the majorization machinery.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statcurv::numerics::degeneracy_threshold;
use statcurv::oracle::{gauss_scal_fd, intrinsic_scal_fd, Chart, MetricField, QubitChart, SimplexChart};
use statcurv::sampling::{random_bloch, random_distribution, random_spectrum};
use statcurv::{
    apply_t_transform, majorization_path, scal_classical, scal_m2, scal_p3, scal_quantum, state_dimensions,
    AdmissibleFunction, Distribution, Field, Spectrum, TTransform,
};

use crate::{rel_err, CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub fixtures: usize,
    pub tolerance: f64,
    pub max_rel_err: f64,
    pub passed: bool,
    /// The first fixture over tolerance.
    pub failing_fixture: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    fixtures: usize,
    worst: f64,
    failing: Option<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check { name, tolerance, fixtures: 0, worst: 0.0, failing: None }
    }

    fn record(&mut self, err: f64, fixture: impl FnOnce() -> String) {
        self.fixtures += 1;
        let err = if err.is_nan() { f64::INFINITY } else { err };
        self.worst = self.worst.max(err);
        if err > self.tolerance && self.failing.is_none() {
            self.failing = Some(fixture());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            fixtures: self.fixtures,
            tolerance: self.tolerance,
            max_rel_err: self.worst,
            passed: self.failing.is_none(),
            failing_fixture: self.failing,
        }
    }
}

const ORACLE_ALPHAS: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 2.0];

fn qubit_functions() -> Vec<AdmissibleFunction> {
    vec![
        AdmissibleFunction::alpha_power(0.5).expect("admissible"),
        AdmissibleFunction::alpha_power(-0.5).expect("admissible"),
        AdmissibleFunction::log(),
        AdmissibleFunction::wigner_yanase(),
    ]
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    if rng.gen_bool(0.5) {
        Field::Real
    } else {
        Field::Complex
    }
}

fn random_function(rng: &mut ChaCha8Rng) -> AdmissibleFunction {
    let mut fs = qubit_functions();
    fs.push(AdmissibleFunction::identity());
    fs.push(AdmissibleFunction::alpha(rng.gen_range(-0.95..2.0)).expect("finite alpha"));
    fs.swap_remove(rng.gen_range(0..fs.len()))
}

/// Largest amount by which a prefix sum of sorted `a` exceeds that of sorted `b`.
fn majorization_excess(a: &[f64], b: &[f64]) -> f64 {
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|x, y| y.total_cmp(x));
        s
    };
    let (sa, sb) = (sorted(a), sorted(b));
    let (mut pa, mut pb, mut worst) = (0.0, 0.0, 0.0f64);
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        worst = worst.max(pa - pb);
    }
    let total: f64 = (pa - pb).abs();
    worst.max(total)
}

fn random_t(rng: &mut ChaCha8Rng, n: usize) -> TTransform {
    let k = rng.gen_range(0..n);
    let l = (k + rng.gen_range(1..n)) % n;
    TTransform::new(k, l, rng.gen_range(0.0..=1.0)).expect("valid indices and weight")
}

/// Runs every check with `trials` random fixtures each. Output depends only
/// on `(seed, trials)`.
pub fn verify(seed: u64, trials: usize) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut c = Check::new("classical_sphere", 1e-10);
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let theta = random_distribution(&mut rng, n, 1e-3);
        let want = ((n - 1) * (n - 2)) as f64 / 4.0;
        let got = scal_classical(0.0, &theta)?.scal;
        c.record(rel_err(got, want), || format!("theta={:?}", theta.probs()));
    }
    checks.push(c.finish());

    let mut c = Check::new("classical_flat", 1e-10);
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let theta = random_distribution(&mut rng, n, 1e-3);
        let got = scal_classical(-1.0, &theta)?.scal;
        c.record(got.abs(), || format!("theta={:?}", theta.probs()));
    }
    checks.push(c.finish());

    let mut c = Check::new("quantum_flat", 1e-10);
    for _ in 0..trials {
        let field = random_field(&mut rng);
        let n = rng.gen_range(2..=5);
        let spec = random_spectrum(&mut rng, n, field, 1e-3);
        let got = scal_quantum(&AdmissibleFunction::identity(), &spec)?.scal;
        c.record(got.abs(), || format!("spectrum={:?} field={}", spec.values(), field.as_str()));
    }
    checks.push(c.finish());

    let mut c = Check::new("quantum_sphere", 1e-10);
    let wy = AdmissibleFunction::wigner_yanase();
    for _ in 0..trials {
        let (n, field) = (rng.gen_range(2..=4), random_field(&mut rng));
        let spec = random_spectrum(&mut rng, n, field, 1e-3);
        let d = state_dimensions(n, field)? as f64;
        let got = scal_quantum(&wy, &spec)?.scal;
        c.record(rel_err(got, d * (d - 1.0) / 4.0), || {
            format!("spectrum={:?} field={}", spec.values(), field.as_str())
        });
    }
    checks.push(c.finish());

    let mut c = Check::new("one_dimensional", 1e-10);
    for _ in 0..trials {
        let alpha = rng.gen_range(-3.0..3.0);
        let theta = random_distribution(&mut rng, 2, 1e-3);
        let got = scal_classical(alpha, &theta)?.scal;
        c.record(got.abs(), || format!("alpha={alpha} theta={:?}", theta.probs()));
    }
    checks.push(c.finish());

    let mut c = Check::new("p3_closed_form", 1e-12);
    for _ in 0..trials {
        let alpha = rng.gen_range(-3.0..3.0);
        let theta = random_distribution(&mut rng, 3, 1e-3);
        let (a, b) = (scal_p3(alpha, &theta)?, scal_classical(alpha, &theta)?.scal);
        c.record(rel_err(a, b), || format!("alpha={alpha} theta={:?}", theta.probs()));
    }
    checks.push(c.finish());

    let mut c = Check::new("m2_closed_form", 1e-12);
    for _ in 0..trials {
        let (f, field) = (random_function(&mut rng), random_field(&mut rng));
        let spec = random_spectrum(&mut rng, 2, field, 1e-3);
        let l = spec.values();
        let (a, b) = (scal_m2(&f, l[0], l[1], field)?, scal_quantum(&f, &spec)?.scal);
        c.record(rel_err(a, b), || format!("f={} spectrum={l:?} field={}", f.label(), field.as_str()));
    }
    checks.push(c.finish());

    let mut c = Check::new("diagonal_restriction", 1e-10);
    for _ in 0..trials {
        let alpha = rng.gen_range(-0.95..2.0);
        let n = rng.gen_range(2..=6);
        let theta = random_distribution(&mut rng, n, 1e-3);
        let f = AdmissibleFunction::alpha(alpha)?;
        let x1 = scal_quantum(&f, &Spectrum::new(theta.probs().to_vec(), Field::Real)?)?.x1;
        let want = scal_classical(alpha, &theta)?.scal;
        c.record(rel_err(x1, want), || format!("alpha={alpha} theta={:?}", theta.probs()));
    }
    checks.push(c.finish());

    let mut ci = Check::new("oracle_classical_intrinsic", 1e-4);
    let mut cg = Check::new("oracle_classical_gauss", 1e-4);
    for _ in 0..trials {
        let n = rng.gen_range(2..=4);
        let alpha = *ORACLE_ALPHAS.choose(&mut rng).expect("non-empty");
        let theta = random_distribution(&mut rng, n, 0.05);
        let chart = SimplexChart::new(n, alpha)?;
        let u = SimplexChart::point(theta.probs());
        let want = scal_classical(alpha, &theta)?.scal;
        let fixture = || format!("n={n} alpha={alpha} theta={:?}", theta.probs());
        ci.record(rel_err(intrinsic_scal_fd(&chart, &u, MetricField::default_step(&chart, &u))?, want), fixture);
        cg.record(rel_err(gauss_scal_fd(&chart, &u, Chart::default_step(&chart, &u))?, want), fixture);
    }
    checks.push(ci.finish());
    checks.push(cg.finish());

    let mut ci = Check::new("oracle_qubit_intrinsic", 1e-4);
    let mut cg = Check::new("oracle_qubit_gauss", 1e-4);
    for _ in 0..trials {
        let field = random_field(&mut rng);
        let f = qubit_functions().swap_remove(rng.gen_range(0..4));
        let chart = QubitChart::new(f.clone(), field);
        let u = random_bloch(&mut rng, Chart::dim(&chart), 0.05, 0.9);
        let r = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let want = scal_m2(&f, 0.5 * (1.0 + r), 0.5 * (1.0 - r), field)?;
        let fixture = || format!("f={} field={} u={u:?}", f.label(), field.as_str());
        ci.record(rel_err(intrinsic_scal_fd(&chart, &u, MetricField::default_step(&chart, &u))?, want), fixture);
        cg.record(rel_err(gauss_scal_fd(&chart, &u, Chart::default_step(&chart, &u))?, want), fixture);
    }
    checks.push(ci.finish());
    checks.push(cg.finish());

    let mut c = Check::new("t_transform_order", 1e-12);
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let x = random_distribution(&mut rng, n, 1e-3);
        let t = random_t(&mut rng, n);
        let y = apply_t_transform(&x, &t)?;
        c.record(majorization_excess(y.probs(), x.probs()), || format!("x={:?} t={t:?}", x.probs()));
    }
    checks.push(c.finish());

    let mut c = Check::new("majorization_path", 1e-12);
    for _ in 0..trials {
        let n = rng.gen_range(2..=6);
        let b = random_distribution(&mut rng, n, 1e-3);
        let mut a = b.clone();
        for _ in 0..rng.gen_range(1..=4) {
            a = apply_t_transform(&a, &random_t(&mut rng, n))?;
        }
        let steps = rng.gen_range(1..=3);
        let fixture = || format!("a={:?} b={:?} steps={steps}", a.probs(), b.probs());
        match majorization_path(&a, &b, steps) {
            Ok(path) => {
                let pts = path.points();
                let mut err = 0.0f64;
                if pts.first() != Some(&a) || pts.last() != Some(&b) {
                    err = f64::INFINITY;
                }
                for w in pts.windows(2) {
                    err = err.max(majorization_excess(w[0].probs(), w[1].probs()));
                    let changed = w[0].probs().iter().zip(w[1].probs()).filter(|(p, q)| p != q).count();
                    if changed > 2 {
                        err = f64::INFINITY;
                    }
                }
                c.record(err, fixture);
            }
            Err(_) => c.record(f64::INFINITY, fixture),
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("degeneracy_continuity", 1e-6);
    for _ in 0..trials {
        let (f, field) = (random_function(&mut rng), random_field(&mut rng));
        let center: f64 = rng.gen_range(0.1..0.45);
        let delta = degeneracy_threshold(center, center);
        let at = |gap: f64| -> Result<f64> {
            let l = vec![center + gap / 2.0, center - gap / 2.0, 1.0 - 2.0 * center];
            let l = Distribution::normalized(l)?.into_vec();
            Ok(scal_quantum(&f, &Spectrum::new(l, field)?)?.scal)
        };
        let (below, above) = (at(0.99 * delta)?, at(1.01 * delta)?);
        c.record(rel_err(below, above), || format!("f={} field={} center={center}", f.label(), field.as_str()));
    }
    checks.push(c.finish());

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { seed, trials, passed, checks })
}
