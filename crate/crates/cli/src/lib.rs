//! Library side of the `statcurv` binary: report commands, monotonicity scans
//! and the randomized oracle verification.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use statcurv::{AdmissibleFunction, Distribution, Field, Spectrum};

pub mod verify;

pub use verify::{verify, CheckResult, VerifyReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] statcurv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Relative error of `a` against the reference `b`; absolute when `b == 0`.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if b == 0.0 {
        d
    } else {
        d / b.abs()
    }
}

/// Parses `alpha:<value>`, `log`, `wy` or `id`.
pub fn parse_function(spec: &str) -> Result<AdmissibleFunction> {
    match spec.trim() {
        "log" => Ok(AdmissibleFunction::log()),
        "wy" => Ok(AdmissibleFunction::wigner_yanase()),
        "id" => Ok(AdmissibleFunction::identity()),
        s => {
            let v = s.strip_prefix("alpha:").ok_or_else(|| {
                CliError::Usage(format!("unknown function '{s}' (expected alpha:<v>, log, wy or id)"))
            })?;
            let a = f64::from_str(v).map_err(|_| CliError::Usage(format!("bad alpha value '{v}'")))?;
            Ok(AdmissibleFunction::alpha(a)?)
        }
    }
}

pub fn cmd_classical(alpha: f64, theta: &[f64]) -> Result<statcurv::ClassicalCurvatureReport> {
    let d = Distribution::new(theta.to_vec())?;
    Ok(statcurv::scal_classical(alpha, &d)?)
}

pub fn cmd_quantum(f: &str, spectrum: &[f64], field: Field) -> Result<statcurv::QuantumCurvatureReport> {
    let f = parse_function(f)?;
    Ok(statcurv::scal_quantum(&f, &Spectrum::new(spectrum.to_vec(), field)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    P3,
    M2Real,
    M2Complex,
}

impl Geometry {
    fn columns(self) -> (&'static str, &'static str) {
        match self {
            Geometry::P3 => ("p3", "classical"),
            Geometry::M2Real => ("m2", "real"),
            Geometry::M2Complex => ("m2", "complex"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub const DEFAULT_ALPHAS: [f64; 6] = [-0.9, -0.5, -0.1, 0.1, 0.5, 0.9];
pub const DEFAULT_GRID: usize = 101;
/// Distance kept from the pure and maximally mixed ends of the r-grid.
pub const M2_EPS: f64 = 1e-3;
pub const FLAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub geometry: Geometry,
    pub alphas: Vec<f64>,
    pub grid: usize,
    /// Base distribution for `P3` scans.
    pub base: Option<Vec<f64>>,
    pub format: Format,
    pub output: Option<std::path::PathBuf>,
}

impl ScanConfig {
    pub fn new(geometry: Geometry) -> Self {
        ScanConfig {
            geometry,
            alphas: DEFAULT_ALPHAS.to_vec(),
            grid: DEFAULT_GRID,
            base: (geometry == Geometry::P3).then(|| vec![0.5, 0.3, 0.2]),
            format: Format::Csv,
            output: None,
        }
    }

    pub fn alphas(mut self, alphas: &[f64]) -> Self {
        self.alphas = alphas.to_vec();
        self
    }

    pub fn grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn base(mut self, base: &[f64]) -> Self {
        self.base = Some(base.to_vec());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneFlag {
    Increasing,
    Decreasing,
    NonMonotone,
    /// Every consecutive difference is within tolerance of zero.
    Constant,
}

impl MonotoneFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            MonotoneFlag::Increasing => "increasing",
            MonotoneFlag::Decreasing => "decreasing",
            MonotoneFlag::NonMonotone => "non_monotone",
            MonotoneFlag::Constant => "constant",
        }
    }
}

/// Classifies a series from the signs of its consecutive differences;
/// differences within `tol` count as flat.
pub fn monotone_flag(values: &[f64], tol: f64) -> MonotoneFlag {
    let (mut up, mut down) = (false, false);
    for w in values.windows(2) {
        let d = w[1] - w[0];
        up |= d > tol;
        down |= d < -tol;
    }
    match (up, down) {
        (false, false) => MonotoneFlag::Constant,
        (true, false) => MonotoneFlag::Increasing,
        (false, true) => MonotoneFlag::Decreasing,
        (true, true) => MonotoneFlag::NonMonotone,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanPoint {
    pub parameter: f64,
    pub scal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSeries {
    pub alpha: f64,
    pub monotone_flag: MonotoneFlag,
    pub points: Vec<ScanPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub geometry: Geometry,
    pub field: &'static str,
    pub series: Vec<ScanSeries>,
}

impl ScanReport {
    pub fn flag(&self, alpha: f64) -> Option<MonotoneFlag> {
        self.series.iter().find(|s| s.alpha == alpha).map(|s| s.monotone_flag)
    }
}

fn uniform_grid(lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let last = (grid - 1) as f64;
    (0..grid).map(|i| if i + 1 == grid { hi } else { lo + (hi - lo) * i as f64 / last }).collect()
}

fn check_config(config: &ScanConfig) -> Result<()> {
    if config.grid < 2 {
        return Err(CliError::Usage(format!("grid must be at least 2, got {}", config.grid)));
    }
    if config.alphas.is_empty() {
        return Err(CliError::Usage("at least one alpha is required".into()));
    }
    if let Some(a) = config.alphas.iter().find(|a| !a.is_finite()) {
        return Err(CliError::Usage(format!("alpha must be finite, got {a}")));
    }
    Ok(())
}

fn series(alpha: f64, params: &[f64], eval: impl Fn(f64) -> Result<f64>) -> Result<ScanSeries> {
    let points = params.iter().map(|&p| Ok(ScanPoint { parameter: p, scal: eval(p)? })).collect::<Result<Vec<_>>>()?;
    let scal: Vec<f64> = points.iter().map(|p| p.scal).collect();
    Ok(ScanSeries { alpha, monotone_flag: monotone_flag(&scal, FLAG_TOL), points })
}

/// Curvature along the transfer `(a₁ − x, a₂ + x, a₃)` for `x ∈ [0, (a₁ − a₂)/2]`.
pub fn cmd_scan_p3(config: &ScanConfig) -> Result<ScanReport> {
    check_config(config)?;
    let base = config.base.as_deref().ok_or_else(|| CliError::Usage("a base distribution is required".into()))?;
    let base = Distribution::new(base.to_vec())?;
    let a = base.probs();
    if a.len() != 3 {
        return Err(CliError::Usage(format!("base must have 3 entries, got {}", a.len())));
    }
    if a[0] <= a[1] {
        return Err(CliError::Usage(format!("base needs a1 > a2, got {} <= {}", a[0], a[1])));
    }
    let xs = uniform_grid(0.0, 0.5 * (a[0] - a[1]), config.grid);
    let mut out = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        out.push(series(alpha, &xs, |x| {
            let theta = Distribution::new(vec![a[0] - x, a[1] + x, a[2]])?;
            Ok(statcurv::scal_p3(alpha, &theta)?)
        })?);
    }
    Ok(ScanReport { geometry: Geometry::P3, field: "classical", series: out })
}

/// Qubit curvature over the Bloch radius `r`, with eigenvalues `(1 ± r)/2`.
pub fn cmd_scan_m2(config: &ScanConfig) -> Result<ScanReport> {
    check_config(config)?;
    let field = match config.geometry {
        Geometry::M2Real => Field::Real,
        Geometry::M2Complex => Field::Complex,
        Geometry::P3 => return Err(CliError::Usage("scan-m2 needs a qubit geometry".into())),
    };
    let rs = uniform_grid(M2_EPS, 1.0 - M2_EPS, config.grid);
    let mut out = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let f = AdmissibleFunction::alpha(alpha)?;
        out.push(series(alpha, &rs, |r| Ok(statcurv::scal_m2(&f, 0.5 * (1.0 + r), 0.5 * (1.0 - r), field)?))?);
    }
    Ok(ScanReport { geometry: config.geometry, field: field.as_str(), series: out })
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanReport> {
    match config.geometry {
        Geometry::P3 => cmd_scan_p3(config),
        _ => cmd_scan_m2(config),
    }
}

pub const CSV_HEADER: [&str; 5] = ["geometry", "field", "alpha", "parameter", "scal"];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows ordered by `(alpha, parameter)`.
pub fn write_csv<W: Write>(report: &ScanReport, out: W) -> Result<()> {
    let (geometry, field) = report.geometry.columns();
    let mut series: Vec<&ScanSeries> = report.series.iter().collect();
    series.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for s in series {
        for p in &s.points {
            w.write_record([geometry, field, &num(s.alpha), &num(p.parameter), &num(p.scal)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_scan<W: Write>(report: &ScanReport, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(report, out),
        Format::Json => write_json(report, out),
    }
}
