//! Majorization order on the simplex, T-transforms, and explicit chains of
//! T-transforms between comparable distributions.

use crate::classical::Distribution;
use crate::error::{Error, Result};

/// Absolute slack on prefix-sum comparisons.
pub const MAJORIZATION_TOL: f64 = 1e-12;

fn sorted_desc(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `a ≺ b` on raw value lists: every prefix sum of the decreasingly sorted
/// `a` is at most the matching prefix sum of `b` (up to [`MAJORIZATION_TOL`]).
pub fn is_majorized_values(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), got: b.len() });
    }
    let (sa, sb) = (sorted_desc(a), sorted_desc(b));
    let (mut pa, mut pb) = (0.0, 0.0);
    for k in 0..sa.len().saturating_sub(1) {
        pa += sa[k];
        pb += sb[k];
        if pa > pb + MAJORIZATION_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a ≺ b`: `a` is more mixed than `b`.
pub fn is_majorized(a: &Distribution, b: &Distribution) -> Result<bool> {
    is_majorized_values(a.probs(), b.probs())
}

/// Replaces coordinates `k` and `l` by the convex combinations
/// `t·x_k + (1−t)·x_l` and `(1−t)·x_k + t·x_l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTransform {
    k: usize,
    l: usize,
    t: f64,
}

impl TTransform {
    pub fn new(k: usize, l: usize, t: f64) -> Result<Self> {
        if k == l {
            return Err(Error::InvalidParameter(format!("T-transform indices must differ, got {k} twice")));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!("T-transform weight {t} outside [0, 1]")));
        }
        Ok(Self { k, l, t })
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn weight(&self) -> f64 {
        self.t
    }

    pub fn apply(&self, x: &Distribution) -> Result<Distribution> {
        let p = x.probs();
        check_index(self.k, p.len())?;
        check_index(self.l, p.len())?;
        let (xk, xl) = (p[self.k], p[self.l]);
        let mut y = p.to_vec();
        y[self.k] = self.t * xk + (1.0 - self.t) * xl;
        y[self.l] = (1.0 - self.t) * xk + self.t * xl;
        Distribution::new(y)
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i < n {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("index {i} out of range for length {n}")))
    }
}

/// Alias for [`TTransform::apply`].
pub fn apply_t_transform(x: &Distribution, t: &TTransform) -> Result<Distribution> {
    t.apply(x)
}

/// A chain `a = c₁ ≺ c₂ ≺ … ≺ c_d = b` in which neighbours differ in at most
/// two coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationPath {
    points: Vec<Distribution>,
}

impl MajorizationPath {
    pub fn points(&self) -> &[Distribution] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks the chain invariants, returning the first offending step.
    pub fn validate(&self) -> Result<()> {
        for (z, w) in self.points.windows(2).enumerate() {
            if !is_majorized(&w[0], &w[1])? {
                return Err(Error::NotMajorized(format!("step {z} is not increasing in the order")));
            }
            let changed = w[0].probs().iter().zip(w[1].probs()).filter(|(x, y)| x != y).count();
            if changed > 2 {
                return Err(Error::NotMajorized(format!("step {z} changes {changed} coordinates")));
            }
        }
        Ok(())
    }
}

const SNAP_TOL: f64 = 1e-15;

/// Builds a majorization chain from `a` up to `b` (requires `a ≺ b`).
///
/// Working from `b` downwards: the first rank where the current point exceeds
/// the sorted target gives up mass to the first later rank that falls short,
/// fixing one of the two coordinates; at most `n − 1` such T-transforms are
/// needed. The result is then permuted onto `a` by transpositions (T-transforms
/// with weight 0). Every averaging transform is split into `steps` equal
/// sub-steps; transpositions are never split, since their midpoint would lie
/// below both ends.
pub fn majorization_path(a: &Distribution, b: &Distribution, steps: usize) -> Result<MajorizationPath> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::Dimension { expected: n, got: b.len() });
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be at least 1".into()));
    }
    if !is_majorized(a, b)? {
        return Err(Error::NotMajorized(format!("{:?} is not majorized by {:?}", a.probs(), b.probs())));
    }
    if a == b {
        return Ok(MajorizationPath { points: vec![a.clone()] });
    }

    // rank r ↦ coordinate order[r], ranking b decreasingly (stable)
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| b.probs()[j].total_cmp(&b.probs()[i]).then(i.cmp(&j)));
    let a_sorted = sorted_desc(a.probs());
    let mut target = vec![0.0; n];
    for (r, &i) in order.iter().enumerate() {
        target[i] = a_sorted[r];
    }

    // descending chain b = y₀ ≻ y₁ ≻ … ≻ a
    let mut chain: Vec<Distribution> = vec![b.clone()];
    let mut x = b.probs().to_vec();
    while let Some(j) = (0..n).find(|&r| x[order[r]] != target[order[r]]) {
        let cj = order[j];
        let Some(k) = ((j + 1)..n).find(|&r| x[order[r]] < target[order[r]]) else {
            // only rounding residue is left at rank j
            x[cj] = target[cj];
            chain.push(Distribution::new(x.clone())?);
            continue;
        };
        let ck = order[k];
        let surplus = x[cj] - target[cj];
        let deficit = target[ck] - x[ck];
        let mut next = x.clone();
        if surplus <= deficit {
            next[cj] = target[cj];
            next[ck] = x[ck] + surplus;
        } else {
            next[ck] = target[ck];
            next[cj] = x[cj] - deficit;
        }
        for i in [cj, ck] {
            if (next[i] - target[i]).abs() <= SNAP_TOL {
                next[i] = target[i];
            }
        }
        for s in 1..steps {
            let w = s as f64 / steps as f64;
            let mut mid = x.clone();
            mid[cj] = x[cj] + w * (next[cj] - x[cj]);
            mid[ck] = (x[cj] + x[ck]) - mid[cj];
            chain.push(Distribution::new(mid)?);
        }
        chain.push(Distribution::new(next.clone())?);
        x = next;
    }
    let mut current = x;

    // transpositions onto the coordinate order of a
    let av = a.probs();
    for p in 0..n {
        if current[p] != av[p] {
            let q = ((p + 1)..n)
                .find(|&q| current[q] == av[p] && current[q] != av[q])
                .or_else(|| ((p + 1)..n).find(|&q| current[q] == av[p]))
                .expect("target is a permutation of a");
            current.swap(p, q);
            chain.push(Distribution::new(current.clone())?);
        }
    }
    debug_assert_eq!(current.as_slice(), av);

    chain.reverse();
    let path = MajorizationPath { points: chain };
    path.validate()?;
    Ok(path)
}
