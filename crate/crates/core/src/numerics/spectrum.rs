use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on the trace-one condition.
pub const TRACE_TOL: f64 = 1e-12;

/// Scalar field of a state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(Error::InvalidParameter(format!("unknown field '{other}'"))),
        }
    }
}

/// Eigenvalues of a faithful state: at least two strictly positive values
/// summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    field: Field,
}

impl Spectrum {
    pub fn new(values: Vec<f64>, field: Field) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidSpectrum(format!("need at least 2 eigenvalues, got {}", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidSpectrum(format!("eigenvalue {v} is not positive")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidSpectrum(format!("eigenvalues sum to {sum}, not 1")));
        }
        Ok(Self { values, field })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
