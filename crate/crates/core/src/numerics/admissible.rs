use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which family an [`AdmissibleFunction`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionKind {
    /// `x ↦ (2/(1−α))·x^((1−α)/2)`, any finite `α ≠ 1`.
    AlphaPower(f64),
    /// `x ↦ ln x` (the `α = 1` member of the power family).
    Log,
    /// `x ↦ 2√x`.
    WignerYanase,
    /// `x ↦ x`.
    Identity,
    /// Caller-supplied triple.
    Custom,
}

#[derive(Clone)]
enum Repr {
    AlphaPower { alpha: f64 },
    Log,
    WignerYanase,
    Identity,
    Custom { name: String, f: ScalarFn, df: ScalarFn, d2f: ScalarFn },
}

/// A function on `(0, 1)` with nowhere-vanishing derivative, carried together
/// with its first two derivatives.
///
/// The pull-back of the Euclidean metric through `D ↦ f(D)` is the metric the
/// curvature routines work with.
#[derive(Clone)]
pub struct AdmissibleFunction {
    repr: Repr,
}

impl AdmissibleFunction {
    /// Power function of the α-geometry. Rejects `α = 1` (use [`Self::log`]) and
    /// non-finite `α`.
    pub fn alpha_power(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NotAdmissible(format!("alpha must be finite, got {alpha}")));
        }
        if alpha == 1.0 {
            return Err(Error::NotAdmissible("alpha = 1 is the logarithm, not a power function".into()));
        }
        Ok(Self { repr: Repr::AlphaPower { alpha } })
    }

    /// The α-geometry generator for any finite α: the logarithm at `α = 1`,
    /// the power function otherwise.
    pub fn alpha(alpha: f64) -> Result<Self> {
        if alpha == 1.0 {
            Ok(Self::log())
        } else {
            Self::alpha_power(alpha)
        }
    }

    pub fn log() -> Self {
        Self { repr: Repr::Log }
    }

    pub fn wigner_yanase() -> Self {
        Self { repr: Repr::WignerYanase }
    }

    pub fn identity() -> Self {
        Self { repr: Repr::Identity }
    }

    /// Wraps a caller-supplied `(f, f′, f″)`. The caller asserts that `f′`
    /// has no zero on `(0, 1)`; curvature routines still reject a zero or
    /// non-finite `f′` at the points they evaluate.
    pub fn custom<F, DF, D2F>(name: impl Into<String>, f: F, df: DF, d2f: D2F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        DF: Fn(f64) -> f64 + Send + Sync + 'static,
        D2F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { repr: Repr::Custom { name: name.into(), f: Arc::new(f), df: Arc::new(df), d2f: Arc::new(d2f) } }
    }

    pub fn kind(&self) -> FunctionKind {
        match &self.repr {
            Repr::AlphaPower { alpha } => FunctionKind::AlphaPower(*alpha),
            Repr::Log => FunctionKind::Log,
            Repr::WignerYanase => FunctionKind::WignerYanase,
            Repr::Identity => FunctionKind::Identity,
            Repr::Custom { .. } => FunctionKind::Custom,
        }
    }

    /// Short human-readable label, e.g. `alpha:0.5` or `log`.
    pub fn label(&self) -> String {
        match &self.repr {
            Repr::AlphaPower { alpha } => format!("alpha:{alpha}"),
            Repr::Log => "log".into(),
            Repr::WignerYanase => "wy".into(),
            Repr::Identity => "id".into(),
            Repr::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::AlphaPower { alpha } => {
                let p = 0.5 * (1.0 - alpha);
                x.powf(p) / p
            }
            Repr::Log => x.ln(),
            Repr::WignerYanase => 2.0 * x.sqrt(),
            Repr::Identity => x,
            Repr::Custom { f, .. } => f(x),
        }
    }

    pub fn deriv1(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::AlphaPower { alpha } => x.powf(-0.5 * (1.0 + alpha)),
            Repr::Log => x.recip(),
            Repr::WignerYanase => x.sqrt().recip(),
            Repr::Identity => 1.0,
            Repr::Custom { df, .. } => df(x),
        }
    }

    pub fn deriv2(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::AlphaPower { alpha } => {
                let q = 0.5 * (1.0 + alpha);
                -q * x.powf(-q - 1.0)
            }
            Repr::Log => -(x * x).recip(),
            Repr::WignerYanase => -0.5 * x.powf(-1.5),
            Repr::Identity => 0.0,
            Repr::Custom { d2f, .. } => d2f(x),
        }
    }

    /// Checks `f′(x)` is finite and non-zero at `x`.
    pub fn check_admissible_at(&self, x: f64) -> Result<()> {
        let d = self.deriv1(x);
        if d.is_finite() && d != 0.0 {
            Ok(())
        } else {
            Err(Error::NotAdmissible(format!("{}: f'({x}) = {d}", self.label())))
        }
    }
}

impl fmt::Debug for AdmissibleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("AdmissibleFunction").field(&self.label()).finish()
    }
}
