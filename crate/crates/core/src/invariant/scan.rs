//! Einstein-residual scans over the surface metric family.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::CoframeAlgebra;
use crate::scalar::C64;

use super::{chern_curvature, einstein_residual_from, EinsteinMode, RicciKind, SurfaceMetricParams};

/// One (r, s, u) sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub r: f64,
    pub s: f64,
    pub u: C64,
}

impl ScanPoint {
    pub fn discriminant(&self) -> f64 {
        self.r * self.r * self.s * self.s - self.u.norm_sqr()
    }

    pub fn params(&self) -> SurfaceMetricParams<C64> {
        SurfaceMetricParams::new(C64::new(self.r, 0.0), C64::new(self.s, 0.0), self.u)
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.r
            .total_cmp(&other.r)
            .then(self.s.total_cmp(&other.s))
            .then(self.u.re.total_cmp(&other.u.re))
            .then(self.u.im.total_cmp(&other.u.im))
    }
}

/// Grid over r, s and u = f·rs·e^{2π√−1 p/phases} with moduli fractions f < 1.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub u_fractions: Vec<f64>,
    pub phases: usize,
}

impl Default for GridSpec {
    /// r, s ∈ {0.25, 0.5, …, 3}; |u| ∈ {0, 0.095, …, 0.855}·rs; 8 phases.
    fn default() -> Self {
        let axis: Vec<f64> = (1..=12).map(|k| 0.25 * k as f64).collect();
        GridSpec { r: axis.clone(), s: axis, u_fractions: (0..10).map(|j| 0.95 * j as f64 / 10.0).collect(), phases: 8 }
    }
}

impl GridSpec {
    /// Parses `key=spec` pairs separated by `;` or whitespace, for keys
    /// `r`, `s` (axis specs), `u` (moduli fractions) and `phases`. An axis
    /// spec is `a:b:step` (linear), `geom:a:b:count` (geometric) or a
    /// comma-separated list. `default` yields [`GridSpec::default`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut grid = GridSpec::default();
        for item in text.split(|c: char| c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            if item == "default" {
                continue;
            }
            let (key, value) =
                item.split_once('=').ok_or_else(|| Error::Invalid(format!("grid item `{item}` is not key=value")))?;
            match key {
                "r" => grid.r = parse_axis(value)?,
                "s" => grid.s = parse_axis(value)?,
                "u" => grid.u_fractions = parse_axis(value)?,
                "phases" => {
                    grid.phases = value.parse().map_err(|_| Error::Invalid(format!("bad phase count `{value}`")))?
                }
                other => return Err(Error::Invalid(format!("unknown grid key `{other}`"))),
            }
        }
        if grid.phases == 0 {
            return Err(Error::Invalid("phases must be positive".into()));
        }
        Ok(grid)
    }

    /// Admissible points in lexicographic generation order. The u = 0 ring
    /// contributes one point rather than one per phase.
    pub fn points(&self) -> Vec<ScanPoint> {
        let mut out = Vec::new();
        for &r in &self.r {
            for &s in &self.s {
                for &frac in &self.u_fractions {
                    let phases = if frac == 0.0 { 1 } else { self.phases };
                    for p in 0..phases {
                        let angle = 2.0 * PI * p as f64 / self.phases as f64;
                        let point = ScanPoint { r, s, u: C64::from_polar(frac * r * s, angle) };
                        if r > 0.0 && s > 0.0 && point.discriminant() > 0.0 {
                            out.push(point);
                        }
                    }
                }
            }
        }
        out
    }
}

fn parse_number(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Invalid(format!("bad number `{s}`")))
}

fn parse_axis(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let values = match parts.as_slice() {
        ["geom", a, b, count] => {
            let (a, b) = (parse_number(a)?, parse_number(b)?);
            let count: usize = count.parse().map_err(|_| Error::Invalid(format!("bad count `{count}`")))?;
            if a <= 0.0 || b <= 0.0 || count == 0 {
                return Err(Error::Invalid("geometric axis needs positive ends and count".into()));
            }
            if count == 1 {
                vec![a]
            } else {
                let ratio = (b / a).powf(1.0 / (count - 1) as f64);
                (0..count).map(|k| a * ratio.powi(k as i32)).collect()
            }
        }
        [a, b, step] => {
            let (a, b, step) = (parse_number(a)?, parse_number(b)?, parse_number(step)?);
            if step <= 0.0 || b < a {
                return Err(Error::Invalid("linear axis needs a <= b and a positive step".into()));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|k| a + step * k as f64).collect()
        }
        [list] => list.split(',').map(parse_number).collect::<Result<_>>()?,
        _ => return Err(Error::Invalid(format!("bad axis spec `{spec}`"))),
    };
    if values.is_empty() {
        return Err(Error::Invalid(format!("axis `{spec}` is empty")));
    }
    Ok(values)
}

/// Value of an obstruction certificate at one grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certificate {
    pub value: f64,
    pub holds: bool,
}

/// Certificate evaluator: receives the point and the computed Einstein factor.
pub type CertificateFn = dyn Fn(&ScanPoint, f64) -> Certificate + Sync;

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateSummary {
    pub holds_everywhere: bool,
    pub violations: usize,
    /// Point with the value closest to failing (smallest |value|).
    pub tightest: ScanPoint,
    pub tightest_value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub kind: RicciKind,
    pub mode: EinsteinMode,
    pub points: usize,
    pub min_residual: f64,
    pub argmin: ScanPoint,
    pub lambda_at_min: f64,
    pub max_residual: f64,
    pub certificate: Option<CertificateSummary>,
}

struct Sample {
    point: ScanPoint,
    residual: f64,
    lambda: f64,
    certificate: Option<Certificate>,
}

/// Evaluates the Einstein residual of every admissible grid point.
///
/// Runs on `workers` threads (`None` uses the global pool); the reduction is
/// sequential over generation order with ties broken lexicographically, so
/// the report does not depend on the thread count.
pub fn scan(
    alg: &CoframeAlgebra<C64>,
    kind: RicciKind,
    mode: EinsteinMode,
    grid: &GridSpec,
    certificate: Option<&CertificateFn>,
    workers: Option<usize>,
) -> Result<ScanReport> {
    if alg.dim() != 2 {
        return Err(Error::DimensionMismatch { left: 2, right: alg.dim() });
    }
    alg.check_integrable()?;
    let jacobi = alg.check_jacobi();
    if !jacobi.pass {
        return Err(Error::JacobiFailure { residual: jacobi.residual });
    }
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let evaluate = |point: &ScanPoint| -> Result<Sample> {
        let h = point.params().metric()?;
        let curvature = chern_curvature(alg, &h)?;
        let e = einstein_residual_from(kind, mode, &curvature.tensor, &h);
        let lambda = e.lambda.re;
        Ok(Sample { point: *point, residual: e.residual, lambda, certificate: certificate.map(|c| c(point, lambda)) })
    };
    let samples: Vec<Sample> = match workers {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("worker pool: {e}")))?
            .install(|| points.par_iter().map(evaluate).collect::<Result<_>>())?,
        None => points.par_iter().map(evaluate).collect::<Result<_>>()?,
    };
    let best = samples
        .iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual).then_with(|| a.point.lex_cmp(&b.point)))
        .expect("non-empty");
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    let certificate = certificate.map(|_| {
        let certs: Vec<(ScanPoint, Certificate)> =
            samples.iter().filter_map(|s| s.certificate.map(|c| (s.point, c))).collect();
        let violations = certs.iter().filter(|(_, c)| !c.holds).count();
        let (tightest, cert) = certs
            .iter()
            .min_by(|a, b| a.1.value.abs().total_cmp(&b.1.value.abs()).then_with(|| a.0.lex_cmp(&b.0)))
            .expect("non-empty");
        CertificateSummary { holds_everywhere: violations == 0, violations, tightest: *tightest, tightest_value: cert.value }
    });
    Ok(ScanReport {
        kind,
        mode,
        points: samples.len(),
        min_residual: best.residual,
        argmin: best.point,
        lambda_at_min: best.lambda,
        max_residual,
        certificate,
    })
}
