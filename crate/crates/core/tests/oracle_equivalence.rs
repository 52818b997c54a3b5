//! Finite-difference curvature against the closed forms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statcurv::numerics::{AdmissibleFunction, Field, Spectrum};
use statcurv::oracle::{gauss_scal_fd, intrinsic_scal_fd, Chart, MetricField, Permuted, QubitChart, SimplexChart};
use statcurv::sampling::{random_bloch, random_distribution};
use statcurv::{scal_classical, scal_m2, scal_quantum};

const TOL: f64 = 1e-4;

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(1e-12)
    }
}

fn qubit_functions() -> Vec<AdmissibleFunction> {
    vec![
        AdmissibleFunction::alpha_power(0.5).unwrap(),
        AdmissibleFunction::alpha_power(-0.5).unwrap(),
        AdmissibleFunction::log(),
        AdmissibleFunction::wigner_yanase(),
        AdmissibleFunction::identity(),
    ]
}

#[test]
fn classical_oracles_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        for &alpha in &[-1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
            let chart = SimplexChart::new(n, alpha).unwrap();
            let mut worst = (0.0f64, 0.0f64);
            for _ in 0..5 {
                let theta = random_distribution(&mut rng, n, 0.05);
                let u = SimplexChart::point(theta.probs());
                let exact = scal_classical(alpha, &theta).unwrap().scal;
                let intrinsic = intrinsic_scal_fd(&chart, &u, MetricField::default_step(&chart, &u)).unwrap();
                let gauss = gauss_scal_fd(&chart, &u, Chart::default_step(&chart, &u)).unwrap();
                if exact == 0.0 {
                    assert!(intrinsic.abs() < 1e-7 && gauss.abs() < 1e-7, "n {n} alpha {alpha}: {intrinsic} {gauss}");
                    continue;
                }
                assert!(rel(intrinsic, gauss) <= 1e-3);
                worst.0 = worst.0.max(rel(intrinsic, exact));
                worst.1 = worst.1.max(rel(gauss, exact));
            }
            eprintln!("classical n={n} alpha={alpha}: intrinsic {:.2e} gauss {:.2e}", worst.0, worst.1);
            assert!(worst.0 <= TOL && worst.1 <= TOL, "n {n} alpha {alpha}: {worst:?}");
        }
    }
}

#[test]
fn qubit_oracles_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for field in [Field::Real, Field::Complex] {
        for f in qubit_functions() {
            let chart = QubitChart::new(f.clone(), field);
            let mut worst = (0.0f64, 0.0f64);
            for _ in 0..5 {
                let u = random_bloch(&mut rng, Chart::dim(&chart), 0.05, 0.9);
                let r = u.iter().map(|x| x * x).sum::<f64>().sqrt();
                let (l1, l2) = (0.5 * (1.0 + r), 0.5 * (1.0 - r));
                let exact = scal_quantum(&f, &Spectrum::new(vec![l1, l2], field).unwrap()).unwrap().scal;
                let two_level = scal_m2(&f, l1, l2, field).unwrap();
                let intrinsic = intrinsic_scal_fd(&chart, &u, MetricField::default_step(&chart, &u)).unwrap();
                let gauss = gauss_scal_fd(&chart, &u, Chart::default_step(&chart, &u)).unwrap();
                if exact == 0.0 {
                    assert!(intrinsic.abs() < 1e-5 && gauss.abs() < 1e-5, "{f:?}: {intrinsic} {gauss}");
                    continue;
                }
                assert!(rel(two_level, exact) < 1e-12);
                assert!(rel(intrinsic, gauss) <= 1e-3);
                worst.0 = worst.0.max(rel(intrinsic, exact));
                worst.1 = worst.1.max(rel(gauss, exact));
            }
            eprintln!("qubit {field:?} {f:?}: intrinsic {:.2e} gauss {:.2e}", worst.0, worst.1);
            assert!(worst.0 <= TOL && worst.1 <= TOL, "{field:?} {f:?}: {worst:?}");
        }
    }
}

#[test]
fn chart_permutation_does_not_change_oracles() {
    let chart = SimplexChart::new(4, 0.5).unwrap();
    let u = [0.3, 0.15, 0.25];
    let h = 1e-4 * 0.15;
    let perm = Permuted::new(chart.clone(), vec![2, 0, 1]).unwrap();
    let v = perm.from_inner(&u);
    let a = intrinsic_scal_fd(&chart, &u, h).unwrap();
    let b = intrinsic_scal_fd(&perm, &v, h).unwrap();
    assert!((a - b).abs() <= 1e-10, "{a} {b}");
    let a = gauss_scal_fd(&chart, &u, h).unwrap();
    let b = gauss_scal_fd(&perm, &v, h).unwrap();
    assert!((a - b).abs() <= 1e-10, "{a} {b}");

    let q = QubitChart::new(AdmissibleFunction::log(), Field::Complex);
    let u = [0.2, -0.3, 0.35];
    let perm = Permuted::new(q.clone(), vec![1, 2, 0]).unwrap();
    let v = perm.from_inner(&u);
    let h = 1e-5;
    let a = intrinsic_scal_fd(&q, &u, h).unwrap();
    let b = intrinsic_scal_fd(&perm, &v, h).unwrap();
    assert!((a - b).abs() <= 1e-10, "{a} {b}");
    let a = gauss_scal_fd(&q, &u, h).unwrap();
    let b = gauss_scal_fd(&perm, &v, h).unwrap();
    assert!((a - b).abs() <= 1e-10, "{a} {b}");
}

fn halving_ratio(err: impl Fn(f64) -> f64, h: f64) -> f64 {
    err(h) / err(h / 2.0)
}

#[test]
fn second_order_convergence() {
    let chart = SimplexChart::new(3, 0.5).unwrap();
    let theta = [0.5, 0.3, 0.2];
    let exact = scal_classical(0.5, &statcurv::Distribution::new(theta.to_vec()).unwrap()).unwrap().scal;
    let u = SimplexChart::point(&theta);
    let ri = halving_ratio(|h| (intrinsic_scal_fd(&chart, &u, h).unwrap() - exact).abs(), 1e-2);
    let rg = halving_ratio(|h| (gauss_scal_fd(&chart, &u, h).unwrap() - exact).abs(), 1e-2);
    eprintln!("classical halving ratios: {ri:.3} {rg:.3}");
    assert!((3.0..5.0).contains(&ri) && (3.0..5.0).contains(&rg));

    let f = AdmissibleFunction::log();
    let q = QubitChart::new(f.clone(), Field::Complex);
    let u = [0.3, 0.2, -0.25];
    let r = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let exact = scal_m2(&f, 0.5 * (1.0 + r), 0.5 * (1.0 - r), Field::Complex).unwrap();
    let ri = halving_ratio(|h| (intrinsic_scal_fd(&q, &u, h).unwrap() - exact).abs(), 2e-2);
    let rg = halving_ratio(|h| (gauss_scal_fd(&q, &u, h).unwrap() - exact).abs(), 2e-2);
    eprintln!("qubit halving ratios: {ri:.3} {rg:.3}");
    assert!((3.0..5.0).contains(&ri) && (3.0..5.0).contains(&rg));
}

#[test]
fn wigner_yanase_qubit_is_a_sphere() {
    let f = AdmissibleFunction::wigner_yanase();
    let q = QubitChart::new(f, Field::Complex);
    let u = [0.1, 0.5, -0.4];
    let s = gauss_scal_fd(&q, &u, 1e-5).unwrap();
    assert!((s - 1.5).abs() < 1e-3, "{s}");
    let s = intrinsic_scal_fd(&q, &u, 1e-5).unwrap();
    assert!((s - 1.5).abs() < 1e-3, "{s}");
}

// Reference values from a 40-digit evaluation of the general double sums.
const CLASSICAL_HALF_532: f64 = 0.528_309_196_314_306;
const LOG_QUBIT_COMPLEX_75: f64 = 1.536_658_017_313_942_3;
const LOG_QUBIT_REAL_75: f64 = 0.436_914_828_780_881_95;

#[test]
fn frozen_reference_values() {
    let theta = statcurv::Distribution::new(vec![0.5, 0.3, 0.2]).unwrap();
    assert!(rel(scal_classical(0.5, &theta).unwrap().scal, CLASSICAL_HALF_532) < 1e-14);
    assert!(rel(statcurv::scal_p3(0.5, &theta).unwrap(), CLASSICAL_HALF_532) < 1e-14);
    let chart = SimplexChart::new(3, 0.5).unwrap();
    let u = SimplexChart::point(theta.probs());
    assert!(
        rel(intrinsic_scal_fd(&chart, &u, MetricField::default_step(&chart, &u)).unwrap(), CLASSICAL_HALF_532) < 1e-4
    );

    let f = AdmissibleFunction::log();
    for (field, want) in [(Field::Complex, LOG_QUBIT_COMPLEX_75), (Field::Real, LOG_QUBIT_REAL_75)] {
        assert!(rel(scal_m2(&f, 0.75, 0.25, field).unwrap(), want) < 1e-14);
        let spec = Spectrum::new(vec![0.75, 0.25], field).unwrap();
        assert!(rel(scal_quantum(&f, &spec).unwrap().scal, want) < 1e-14);
        // Bloch radius 0.5 gives eigenvalues (0.75, 0.25)
        let q = QubitChart::new(f.clone(), field);
        let u = if field == Field::Complex { vec![0.3, 0.0, 0.4] } else { vec![0.3, 0.4] };
        assert!(rel(intrinsic_scal_fd(&q, &u, MetricField::default_step(&q, &u)).unwrap(), want) < 1e-4);
        assert!(rel(gauss_scal_fd(&q, &u, Chart::default_step(&q, &u)).unwrap(), want) < 1e-4);
    }
}
