//! Subcommand implementations. Each returns an [`Outcome`]; errors are
//! input errors.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use chern_core::catalog::{self, Family, Status, VerifyMode, VerifyTable};
use chern_core::chart::{
    self, conformal_check, first_ce_from_potential, fd_oracle, halton_points, ChartMetric, ConformalFactor,
    MetricField, Potential, ScalarField, FD_STEP,
};
use chern_core::chart::registry::{FACTOR_NAMES, METRIC_NAMES};
use chern_core::forms::CoframeAlgebra;
use chern_core::invariant::scan::CertificateFn;
use chern_core::invariant::{
    bogomolov_lubke, chern_curvature, einstein_residual_from, is_gauduchon, gauduchon_degree_invariant, lee_form,
    scan, EinsteinMode, GridSpec, HermitianMetric, RicciKind, RicciReport,
};
use chern_core::scalar::{format_c64, format_f64, Scalar};
use chern_core::structure::StructureFile;
use chern_core::yamabe::{conformal_scalar_law, gauduchon_degree_grid, solve_chya, YamabeError, YamabeProblemFile};

use crate::input::{parse_point, Input};
use crate::report::Report;

/// Default tolerance of `chart conformal`.
pub const CONFORMAL_TOL: f64 = 1e-8;
/// Default tolerance of `chart first-ce`.
pub const FIRST_CE_TOL: f64 = 1e-7;
/// Keeps sampled chart points away from excluded sets and domain faces.
const SAMPLE_MARGIN: f64 = 0.05;

pub enum Output {
    Report(Report),
    Raw(String),
}

pub struct Outcome {
    pub output: Output,
    /// Whether the tested condition holds; maps to exit code 0 or 1.
    pub ok: bool,
}

impl Outcome {
    fn report(report: Report, ok: bool) -> Self {
        Outcome { output: Output::Report(report), ok }
    }
}

fn backend_name<S: Scalar>() -> &'static str {
    if S::EXACT { "exact" } else { "float" }
}

fn f64_of<S: Scalar>(v: &S) -> String {
    format_f64(v.to_c64().re)
}

fn header<S: Scalar>(rep: &mut Report, input: &Input) {
    rep.push("input", &input.label);
    rep.push("dim", input.algebra.dim());
    rep.push("backend", backend_name::<S>());
}

fn prepared<S: Scalar>(input: &Input) -> (CoframeAlgebra<S>, HermitianMetric<S>) {
    (input.algebra.to_scalar::<S>(), input.metric.to_scalar::<S>())
}

pub fn parse(path: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = StructureFile::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let mut rep = Report::new(format!("parse {}", path.display()));
    rep.push("dim", file.algebra.dim());
    rep.push("jacobi.pass", file.jacobi.pass);
    rep.push("jacobi.residual", format_f64(file.jacobi.residual));
    let integrable = file.algebra.check_integrable();
    rep.push("integrable", integrable.is_ok());
    for (i, line) in file.print().lines().enumerate() {
        rep.push(format!("canonical.{:02}", i + 1), line);
    }
    Ok(Outcome::report(rep, file.jacobi.pass && integrable.is_ok()))
}

pub fn curvature<S: Scalar>(input: &Input) -> Result<Outcome> {
    let (alg, h) = prepared::<S>(input);
    let curv = chern_curvature(&alg, &h)?;
    let report = RicciReport::new(&curv.tensor, &h);
    let n = h.dim();
    let mut rep = Report::new("curvature");
    header::<S>(&mut rep, input);
    rep.matrix("h", h.matrix());
    for t in 0..n.pow(4) {
        let (i, j, k, l) = (t / n.pow(3), (t / n / n) % n, (t / n) % n, t % n);
        rep.scalar(format!("theta.{}{}{}{}", i + 1, j + 1, k + 1, l + 1), curv.tensor.get(i, j, k, l));
    }
    rep.matrix("ric1", &report.ric1);
    rep.matrix("ric2", &report.ric2);
    rep.matrix("ric3", &report.ric3);
    rep.scalar("s_chern", &report.s_chern);
    rep.scalar("s_third", &report.s_third);
    for (kind, e) in RicciKind::ALL.iter().zip(&report.einstein) {
        rep.scalar(format!("einstein{kind}.lambda"), &e.lambda);
        rep.push(format!("einstein{kind}.residual"), format_f64(e.residual));
    }
    Ok(Outcome::report(rep, true))
}

pub fn einstein<S: Scalar>(input: &Input, kind: RicciKind, mode: EinsteinMode, tol: f64) -> Result<Outcome> {
    let (alg, h) = prepared::<S>(input);
    let curv = chern_curvature(&alg, &h)?;
    let e = einstein_residual_from(kind, mode, &curv.tensor, &h);
    let holds = e.residual <= tol;
    let mut rep = Report::new("einstein");
    header::<S>(&mut rep, input);
    rep.push("kind", kind);
    rep.push("mode", mode);
    rep.scalar("lambda", &e.lambda);
    rep.push("lambda.real", f64_of(&e.lambda));
    rep.push("residual", format_f64(e.residual));
    rep.push("tol", format_f64(tol));
    rep.push("einstein", holds);
    Ok(Outcome::report(rep, holds))
}

pub fn scan_command(
    input: &Input,
    kind: RicciKind,
    mode: EinsteinMode,
    grid: &GridSpec,
    tol: f64,
    workers: Option<usize>,
) -> Result<Outcome> {
    let alg = input.algebra.to_c64();
    // Certificates describe the strong kind-2 problem only.
    let certificate: Option<&CertificateFn> = match input.entry {
        Some(e) if kind == RicciKind::Second && mode == EinsteinMode::Strong => {
            e.certificate.as_ref().map(|f| f as &CertificateFn)
        }
        _ => None,
    };
    let rep_data = scan(&alg, kind, mode, grid, certificate, workers)?;
    let mut rep = Report::new("scan");
    rep.push("input", &input.label);
    rep.push("kind", kind);
    rep.push("mode", mode);
    rep.push("points", rep_data.points);
    rep.push("min_residual", format_f64(rep_data.min_residual));
    rep.push("argmin.r", format_f64(rep_data.argmin.r));
    rep.push("argmin.s", format_f64(rep_data.argmin.s));
    rep.push("argmin.u", format_c64(rep_data.argmin.u));
    rep.push("lambda_at_min", format_f64(rep_data.lambda_at_min));
    rep.push("max_residual", format_f64(rep_data.max_residual));
    rep.push("tol", format_f64(tol));
    rep.push("solution_found", rep_data.min_residual <= tol);
    let mut ok = true;
    if let Some(c) = &rep_data.certificate {
        rep.push("certificate.holds", c.holds_everywhere);
        rep.push("certificate.violations", c.violations);
        rep.push("certificate.tightest.r", format_f64(c.tightest.r));
        rep.push("certificate.tightest.s", format_f64(c.tightest.s));
        rep.push("certificate.tightest.u", format_c64(c.tightest.u));
        rep.push("certificate.tightest.value", format_f64(c.tightest_value));
        ok = c.holds_everywhere;
    }
    Ok(Outcome::report(rep, ok))
}

pub fn catalog_list() -> Outcome {
    let mut rep = Report::new("catalog");
    for e in catalog::entries() {
        rep.push(format!("{}.title", e.name), e.title);
        let family = match e.family {
            Family::Surface => "surface",
            Family::Round => "round",
        };
        rep.push(format!("{}.family", e.name), family);
        rep.push(format!("{}.default_points", e.name), e.default_params().len());
    }
    for (name, reason) in catalog::OUT_OF_SCOPE {
        rep.push(format!("{name}.out_of_scope"), reason);
    }
    Outcome::report(rep, true)
}

fn push_table(rep: &mut Report, table: &VerifyTable, point: usize) {
    let prefix = format!("{}.p{}", table.entry, point + 1);
    rep.push(format!("{prefix}.params"), table.params.render());
    let mut seen: Vec<String> = Vec::new();
    for row in &table.rows {
        let mut key = format!("{prefix}.{}", row.quantity);
        if row.status == Status::ConventionSensitive {
            key.push_str(".convention");
        }
        let repeats = seen.iter().filter(|k| **k == key).count();
        seen.push(key.clone());
        if repeats > 0 {
            key = format!("{key}.{}", repeats + 1);
        }
        let verdict = match (row.status, row.pass) {
            (Status::Asserted, true) => "pass",
            (Status::Asserted, false) => "FAIL",
            (Status::ConventionSensitive, true) => "info-agrees",
            (Status::ConventionSensitive, false) => "info-differs",
        };
        rep.push(key, format!("{verdict} expected={} computed={} [{}]", row.expected, row.computed, row.provenance));
    }
}

pub fn catalog_verify(
    entry: Option<&str>,
    params: &crate::input::ParamArgs,
    exact: bool,
    workers: Option<usize>,
) -> Result<Outcome> {
    let mode = if exact { VerifyMode::Exact } else { VerifyMode::Float };
    let tables = match entry {
        Some(name) => {
            let e = catalog::entry(name)?;
            let points = if params.is_empty() { e.default_params() } else { vec![params.for_entry(e)] };
            points.iter().map(|p| catalog::verify(name, p, mode)).collect::<chern_core::Result<Vec<_>>>()?
        }
        None => {
            if !params.is_empty() {
                bail!("--params needs --entry for catalog verify");
            }
            catalog::verify_all(mode, workers)?
        }
    };
    let mut rep = Report::new(format!("catalog verify ({})", if exact { "exact" } else { "float" }));
    let mut point = 0;
    for (idx, table) in tables.iter().enumerate() {
        point = if idx > 0 && tables[idx - 1].entry == table.entry { point + 1 } else { 0 };
        push_table(&mut rep, table, point);
    }
    let asserted = tables.iter().flat_map(|t| &t.rows).filter(|r| r.status == Status::Asserted);
    let (total, failures) = asserted.fold((0, 0), |(t, f), r| (t + 1, f + usize::from(!r.pass)));
    let pass = tables.iter().all(VerifyTable::pass);
    rep.push("summary.tables", tables.len());
    rep.push("summary.asserted", total);
    rep.push("summary.failures", failures);
    rep.push("summary.pass", pass);
    Ok(Outcome::report(rep, pass))
}

pub fn catalog_export(name: &str, params: &crate::input::ParamArgs) -> Result<Outcome> {
    let e = catalog::entry(name)?;
    let text = e.export(&params.for_entry(e))?;
    Ok(Outcome { output: Output::Raw(text), ok: true })
}

pub fn lee<S: Scalar>(input: &Input) -> Result<Outcome> {
    let (alg, h) = prepared::<S>(input);
    alg.check_integrable()?;
    let lee = lee_form(&alg, &h)?;
    let mut rep = Report::new("lee");
    header::<S>(&mut rep, input);
    rep.push("exists", lee.theta.is_some());
    if let Some(theta) = &lee.theta {
        rep.form("theta", theta);
    }
    rep.push("residual", format_f64(lee.residual));
    rep.push("lck", lee.lck);
    Ok(Outcome::report(rep, lee.theta.is_some()))
}

pub fn gauduchon<S: Scalar>(input: &Input) -> Result<Outcome> {
    let (alg, h) = prepared::<S>(input);
    alg.check_integrable()?;
    let check = is_gauduchon(&alg, &h)?;
    let mut rep = Report::new("gauduchon");
    header::<S>(&mut rep, input);
    rep.push("gauduchon", check.gauduchon);
    rep.push("residual", format_f64(check.residual));
    if check.gauduchon {
        rep.push("degree", format_f64(gauduchon_degree_invariant(&alg, &h)?));
    }
    Ok(Outcome::report(rep, check.gauduchon))
}

pub fn bl<S: Scalar>(input: &Input, tol: f64) -> Result<Outcome> {
    let (alg, h) = prepared::<S>(input);
    let curv = chern_curvature(&alg, &h)?;
    let value = bogomolov_lubke(&curv, &h)?;
    let holds = value <= tol;
    let mut rep = Report::new("bogomolov-lubke");
    header::<S>(&mut rep, input);
    rep.push("value", format_f64(value));
    rep.push("tol", format_f64(tol));
    rep.push("nonpositive", holds);
    Ok(Outcome::report(rep, holds))
}

pub fn yamabe(path: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let problem_file = YamabeProblemFile::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let (grid, problem) = problem_file.build()?;
    let mut rep = Report::new("yamabe");
    rep.push("problem", path.display());
    rep.push("grid", grid.resolution());
    rep.push("dim", problem.dim);
    rep.push("scalar.mean", format_f64(problem.scalar.mean()));
    rep.push("gauduchon_degree", format_f64(gauduchon_degree_grid(&problem.scalar)));
    let solution = match solve_chya(&grid, &problem) {
        Ok(s) => s,
        Err(YamabeError::OpenConjecture { mean }) => {
            rep.push("status", "open-conjecture");
            rep.push("detail", format!("positive mean scalar curvature {}", format_f64(mean)));
            return Ok(Outcome::report(rep, false));
        }
        Err(YamabeError::NotConverged { iterations, residual }) => {
            rep.push("status", "not-converged");
            rep.push("iterations", iterations);
            rep.push("residual", format_f64(residual));
            return Ok(Outcome::report(rep, false));
        }
        Err(e) => return Err(e.into()),
    };
    let branch = match solution.branch {
        chern_core::yamabe::Branch::Poisson => "poisson",
        chern_core::yamabe::Branch::Negative => "negative",
    };
    let values = solution.f.values();
    let new_scalar = conformal_scalar_law(&grid, &problem.scalar, &solution.f, problem.dim)?;
    let target = problem.dim as f64 * solution.lambda;
    let deviation = new_scalar.values().iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    rep.push("status", "solved");
    rep.push("branch", branch);
    rep.push("lambda", format_f64(solution.lambda));
    rep.push("residual", format_f64(solution.residual));
    rep.push("iterations", solution.iterations);
    rep.push("f.min", format_f64(values.iter().copied().fold(f64::INFINITY, f64::min)));
    rep.push("f.max", format_f64(values.iter().copied().fold(f64::NEG_INFINITY, f64::max)));
    rep.push("f.mean", format_f64(solution.f.mean()));
    rep.push("new_scalar.constant", format_f64(target));
    rep.push("new_scalar.max_deviation", format_f64(deviation));
    Ok(Outcome::report(rep, true))
}

pub fn chart_list() -> Outcome {
    let mut rep = Report::new("chart registry");
    rep.push("metrics", METRIC_NAMES.join(","));
    rep.push("factors", FACTOR_NAMES.join(","));
    rep.push("potentials", "flat,fs-product");
    Outcome::report(rep, true)
}

fn chart_point(point: Option<&str>, domain: &chart::Domain, seed: u64) -> Result<Vec<f64>> {
    match point {
        Some(p) => {
            let x = parse_point(p)?;
            if x.len() != domain.real_dim() {
                bail!("point needs {} real coordinates, got {}", domain.real_dim(), x.len());
            }
            Ok(x)
        }
        None => halton_points(domain, 1, seed, SAMPLE_MARGIN)
            .into_iter()
            .next()
            .ok_or_else(|| anyhow!("no sample point in the domain")),
    }
}

fn render_point(x: &[f64]) -> String {
    x.iter().map(|v| format_f64(*v)).collect::<Vec<_>>().join(",")
}

pub fn chart_curvature(metric: &str, r: f64, point: Option<&str>, seed: u64) -> Result<Outcome> {
    let m = ChartMetric::from_name(metric, seed, r)?;
    let x = chart_point(point, &m.domain(), seed)?;
    let curv = chart::curvature_at(&m, &x)?;
    let oracle = fd_oracle(&m, &x, FD_STEP)?;
    let mut rep = Report::new("chart curvature");
    rep.push("metric", m.name());
    rep.push("point", render_point(&x));
    rep.matrix("h", curv.metric.matrix());
    for kind in RicciKind::ALL {
        rep.matrix(&format!("ric{kind}"), &curv.ricci(kind));
    }
    rep.push("s_chern", format_f64(curv.scalar_chern()));
    rep.push("fd_oracle.relative_distance", format_f64(curv.tensor.relative_distance(&oracle.tensor)));
    Ok(Outcome::report(rep, true))
}

pub fn chart_conformal(metric: &str, factor: &str, r: f64, point: Option<&str>, seed: u64, tol: f64) -> Result<Outcome> {
    let m = ChartMetric::from_name(metric, seed, r)?;
    let f = ConformalFactor::from_name(factor)?;
    let x = chart_point(point, &m.domain().intersect(&f.domain()), seed)?;
    let c = conformal_check(&m, &f, &x)?;
    let holds = c.max() <= tol;
    let mut rep = Report::new("chart conformal");
    rep.push("metric", m.name());
    rep.push("factor", f.name());
    rep.push("point", render_point(&x));
    rep.push("theta", format_f64(c.theta));
    rep.push("ric1", format_f64(c.ric1));
    rep.push("ric2", format_f64(c.ric2));
    rep.push("ric2_literal", format_f64(c.ric2_literal));
    rep.push("max", format_f64(c.max()));
    rep.push("tol", format_f64(tol));
    rep.push("holds", holds);
    Ok(Outcome::report(rep, holds))
}

pub fn chart_first_ce(potential: &str, sign: f64, points: usize, seed: u64, tol: f64) -> Result<Outcome> {
    let p = Potential::from_name(potential)?;
    let fce = first_ce_from_potential(p, sign)?;
    let xs = halton_points(&fce.metric.domain(), points, seed, SAMPLE_MARGIN);
    let report = fce.verify(&xs)?;
    let holds = report.max_discrepancy <= tol;
    let mut rep = Report::new("chart first-ce");
    rep.push("potential", potential);
    rep.push("sign", format_f64(sign));
    rep.push("points", report.points);
    rep.push("max_discrepancy", format_f64(report.max_discrepancy));
    rep.push("factor.min", format_f64(report.factor_range.0));
    rep.push("factor.max", format_f64(report.factor_range.1));
    rep.push("tol", format_f64(tol));
    rep.push("holds", holds);
    Ok(Outcome::report(rep, holds))
}
