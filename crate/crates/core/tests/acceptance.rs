//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that every line is printed; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use chern_core::catalog::{self, Computation, Params, VerifyMode};
use chern_core::chart::{
    conformal_check, curvature_at, fd_oracle, first_ce_from_potential, halton_points, relative_discrepancy,
    ChartMetric, ConformalFactor, MetricField, Potential, ScalarField, FD_STEP,
};
use chern_core::invariant::{
    bogomolov_lubke, chern_curvature, einstein_residual_from, ricci_form, scan, trace_with, EinsteinMode, GridSpec,
    HermitianMetric, RicciKind,
};
use chern_core::linalg::Matrix;
use chern_core::scalar::{Scalar, C64, CQ};
use chern_core::yamabe::{
    conformal_scalar_law, solve_chya, solve_chya_from, PeriodicGrid, SourceSpec, YamabeProblem,
};

/// Keeps chart samples away from excluded sets and domain faces.
const SAMPLE_MARGIN: f64 = 0.05;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: summary }
        } else {
            Outcome { pass: false, detail: format!("{summary}; {}", failures.join("; ")) }
        }
    }
}

fn q(num: i64, den: i64) -> CQ {
    CQ::from_ratio(num, den)
}

fn diag(a: CQ, b: CQ) -> Matrix<CQ> {
    vec![vec![a, CQ::zero()], vec![CQ::zero(), b]]
}

fn scale(m: &Matrix<CQ>, c: &CQ) -> Matrix<CQ> {
    m.iter().map(|row| row.iter().map(|v| v.clone() * c.clone()).collect()).collect()
}

fn rel_matrix(a: &Matrix<C64>, b: &Matrix<C64>) -> f64 {
    relative_discrepancy(a.iter().flatten().zip(b.iter().flatten()))
}

fn hopf_params(r: CQ) -> Params {
    Params::new(r.clone(), r, CQ::zero())
}

fn criterion_1() -> Outcome {
    let hopf = catalog::entry("hopf").unwrap();
    let mut failures = Vec::new();
    let mut slowest = 0.0f64;
    for r in [q(1, 1), q(2, 1), q(1, 3)] {
        let p = hopf_params(r.clone());
        let r2 = r.clone() * r.clone();
        let ric1 = diag(q(2, 1), CQ::zero());
        let lambda = CQ::from_i64(2) / r2.clone();
        let s = CQ::from_i64(4) / r2;
        let start = Instant::now();
        let exact = Computation::<CQ>::new(hopf, &p).unwrap();
        let float = Computation::<C64>::new(hopf, &p).unwrap();
        slowest = slowest.max(start.elapsed().as_secs_f64());
        let ric2 = scale(exact.metric.matrix(), &lambda);
        if exact.report.ric1 != ric1 || exact.report.ric2 != ric2 || exact.report.s_chern != s {
            failures.push(format!("exact mismatch at r={}", r.render()));
        }
        let to_c64 = |m: &Matrix<CQ>| -> Matrix<C64> { m.iter().map(|row| row.iter().map(Scalar::to_c64).collect()).collect() };
        let worst = rel_matrix(&float.report.ric1, &to_c64(&ric1))
            .max(rel_matrix(&float.report.ric2, &to_c64(&ric2)))
            .max((float.report.s_chern - s.to_c64()).norm() / s.norm());
        if worst > 1e-12 {
            failures.push(format!("float relative error {worst:.2e} at r={}", r.render()));
        }
    }
    if slowest >= 0.05 {
        failures.push(format!("slowest case {:.1} ms", slowest * 1e3));
    }
    Outcome::new(failures, format!("r in {{1, 2, 1/3}}, slowest case {:.2} ms", slowest * 1e3))
}

/// Closed-form checks for one surface entry at one parameter point.
fn surface_closed_forms(name: &str, p: &Params, c: &Computation<CQ>) -> Vec<String> {
    let (r2, s2) = (p.r.clone() * p.r.clone(), p.s.clone() * p.s.clone());
    let u2 = p.u.clone() * p.u.conj();
    let d = r2.clone() * s2.clone() - u2.clone();
    let zero = Matrix::<CQ>::from(vec![vec![CQ::zero(); 2]; 2]);
    let rep = &c.report;
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(format!("{name} {what} at {}", p.render()));
        }
    };
    match name {
        "inoue-sm" => check(rep.s_chern == -r2 / (CQ::from_i64(2) * d), "S^Ch"),
        "inoue-spm" => check(rep.s_chern == -r2 / d, "S^Ch"),
        "kodaira-primary" | "kodaira-secondary" => {
            check(rep.ric1 == zero, "Ric1");
            check(rep.s_chern.is_exact_zero(), "S^Ch");
        }
        "snow-s5" => {
            let l2 = p.ell.clone() * p.ell.clone();
            let d2 = CQ::from_i64(4) * d.clone() * d;
            check(rep.ric1 == zero, "Ric1");
            check(rep.ric2[0][0] == l2.clone() * r2.clone() * s2.clone() * u2.clone() / d2.clone(), "Ric2_11");
            check(rep.ric2[0][1] == -CQ::i() * l2.clone() * r2 * s2.clone() * s2.clone() * p.u.clone() / d2.clone(), "Ric2_12");
            check(rep.ric2[1][1] == l2 * s2.clone() * s2 * u2 / d2, "Ric2_22");
        }
        "ovando-r4" => {
            let s = -CQ::from_i64(2) * s2 / d;
            check(rep.s_chern == s, "S^Ch");
            check(rep.ric2 == scale(c.metric.matrix(), &(s / CQ::from_i64(2))), "Ric2 = (S/2)h");
        }
        "ovando-r2r2" => {
            if p.u.is_exact_zero() {
                let half = diag(q(-1, 2), q(-1, 2));
                check(rep.ric1 == half && rep.ric2 == half, "diagonal Ric1 = Ric2");
                if r2 == CQ::one() && s2 == CQ::one() {
                    check(rep.ric2 == scale(c.metric.matrix(), &q(-1, 1)), "Ric2 = -omega at (1,1,0)");
                }
            }
        }
        _ => unreachable!(),
    }
    bad
}

fn criterion_2() -> Outcome {
    let names = ["inoue-sm", "inoue-spm", "kodaira-primary", "kodaira-secondary", "snow-s5", "ovando-r4", "ovando-r2r2"];
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in names {
        let entry = catalog::entry(name).unwrap();
        let points = entry.default_params();
        if points.len() < 5 {
            failures.push(format!("{name} has only {} points", points.len()));
        }
        for p in &points {
            let c = Computation::<CQ>::new(entry, p).unwrap();
            failures.extend(surface_closed_forms(name, p, &c));
            let table = catalog::verify(name, p, VerifyMode::Exact).unwrap();
            if !table.pass() {
                failures.push(format!("{name} catalog rows fail at {}", p.render()));
            }
            checked += 1;
        }
    }
    Outcome::new(failures, format!("{checked} exact parameter points over {} entries", names.len()))
}

fn criterion_3() -> Outcome {
    let grid = GridSpec::default();
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    let start = Instant::now();
    for name in ["inoue-sm", "inoue-spm", "kodaira-primary", "kodaira-secondary"] {
        let entry = catalog::entry(name).unwrap();
        let alg = entry.algebra(&entry.default_params()[0]).to_c64();
        let cert = entry.certificate.unwrap();
        let report = scan(&alg, RicciKind::Second, EinsteinMode::Strong, &grid, Some(&cert), None).unwrap();
        let summary = report.certificate.clone().unwrap();
        parts.push(format!("{name} min {:.3e}", report.min_residual));
        if report.points < 10_000 {
            failures.push(format!("{name}: only {} points", report.points));
        }
        if report.min_residual <= 1e-3 {
            let a = report.argmin;
            failures.push(format!(
                "{name}: min residual {:.3e} <= 1e-3 at r={} s={} u={:.4}{:+.4}i",
                report.min_residual, a.r, a.s, a.u.re, a.u.im
            ));
        }
        if !summary.holds_everywhere {
            failures.push(format!("{name}: certificate fails at {} points", summary.violations));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 30.0 {
        failures.push(format!("scan time {elapsed:.1} s"));
    }
    Outcome::new(failures, format!("{} points per surface, {}; {elapsed:.1} s", grid.points().len(), parts.join(", ")))
}

fn criterion_4() -> Outcome {
    let metrics = [ChartMetric::HopfChart { r: 1.0 }, ChartMetric::FsProduct, ChartMetric::from_name("random-poly", 7, 1.0).unwrap()];
    let factors = [ConformalFactor::Abs2Z1, ConformalFactor::LogNorm, ConformalFactor::Trig];
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for m in &metrics {
        for f in &factors {
            let points = halton_points(&m.domain().intersect(&f.domain()), 100, 1, SAMPLE_MARGIN);
            for x in &points {
                match conformal_check(m, f, x) {
                    Ok(r) => worst = worst.max(r.max()),
                    Err(e) => failures.push(format!("{} / {}: {e}", m.name(), f.name())),
                }
            }
        }
    }
    if worst >= 1e-8 {
        failures.push(format!("max discrepancy {worst:.2e}"));
    }
    Outcome::new(failures, format!("3 metrics x 3 factors x 100 points, max relative discrepancy {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let m = ChartMetric::HopfChart { r: 1.0 };
    let mut worst = 0.0f64;
    for x in halton_points(&m.domain(), 50, 2, SAMPLE_MARGIN) {
        let c = curvature_at(&m, &x).unwrap();
        let target: Matrix<C64> = c.metric.matrix().iter().map(|row| row.iter().map(|v| v * 2.0).collect()).collect();
        worst = worst.max(rel_matrix(&c.ricci(RicciKind::Second), &target));
    }
    let hopf = catalog::entry("hopf").unwrap();
    let inv = Computation::<CQ>::new(hopf, &hopf_params(CQ::one())).unwrap();
    let lambda = inv.report.einstein[1].lambda.clone();
    let mut failures = Vec::new();
    if worst >= 1e-8 {
        failures.push(format!("chart discrepancy {worst:.2e}"));
    }
    if lambda != CQ::from_i64(2) || inv.report.einstein[1].residual != 0.0 {
        failures.push(format!("invariant lambda {}", lambda.render()));
    }
    Outcome::new(failures, format!("50 points, max relative discrepancy {worst:.2e}; invariant lambda = {}", lambda.render()))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for m in ChartMetric::all(11) {
        let mut worst = 0.0f64;
        for x in halton_points(&m.domain(), 20, 3, SAMPLE_MARGIN) {
            let ad = curvature_at(&m, &x).unwrap();
            let fd = fd_oracle(&m, &x, FD_STEP).unwrap();
            worst = worst.max(ad.tensor.relative_distance(&fd.tensor));
        }
        if worst >= 1e-6 {
            failures.push(format!("{}: {worst:.2e}", m.name()));
        }
        parts.push(format!("{} {worst:.1e}", m.name()));
    }
    Outcome::new(failures, format!("20 points per metric: {}", parts.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for sign in [1.0, -1.0] {
        let fce = first_ce_from_potential(Potential::FsProduct, sign).unwrap();
        let points = halton_points(&fce.metric.domain(), 100, 4, SAMPLE_MARGIN);
        let report = fce.verify(&points).unwrap();
        let (lo, hi) = report.factor_range;
        if report.max_discrepancy >= 1e-7 {
            failures.push(format!("sign {sign}: {:.2e}", report.max_discrepancy));
        }
        if lo * sign <= 0.0 || hi * sign <= 0.0 {
            failures.push(format!("sign {sign}: factor range [{lo}, {hi}]"));
        }
        let n = fce.metric.dim() as f64;
        let x = &points[0];
        let expected = sign * (-fce.metric.factor.eval(x.as_slice()) / n).exp();
        if (fce.factor_at(x) - expected).abs() > 1e-15 * expected.abs() {
            failures.push(format!("sign {sign}: factor is not sign*exp(-f/n)"));
        }
        parts.push(format!("sign {sign:+}: {:.2e}", report.max_discrepancy));
    }
    Outcome::new(failures, format!("fs-product potential, 100 points each, {}", parts.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let v = |x: f64, y: f64| 0.3 * (2.0 * PI * x).sin() * (2.0 * PI * y).cos();

    let grid = PeriodicGrid::new(64).unwrap();
    let s = SourceSpec::Synthetic { amplitude: 0.3 }.sample(&grid, 2);
    let sol = solve_chya(&grid, &YamabeProblem::new(s.clone(), 2)).unwrap();
    let recovery = sol.f.distance_mod_constants(&grid.sample(v)).unwrap();
    if recovery >= 1e-8 || sol.residual >= 1e-8 || sol.lambda != 0.0 {
        failures.push(format!("synthetic: |f - v| {recovery:.2e}, residual {:.2e}, lambda {}", sol.residual, sol.lambda));
    }
    let law = conformal_scalar_law(&grid, &s, &sol.f, 2).unwrap();
    let spread = law.values().iter().fold(f64::NEG_INFINITY, |a, b| a.max(*b))
        - law.values().iter().fold(f64::INFINITY, |a, b| a.min(*b));
    if spread >= 1e-7 {
        failures.push(format!("conformal scalar law spread {spread:.2e}"));
    }

    let grid16 = PeriodicGrid::new(16).unwrap();
    let constant = solve_chya(&grid16, &YamabeProblem::new(grid16.sample(|_, _| -1.0), 1)).unwrap();
    if constant.f.max_abs() > 1e-12 || (constant.lambda + 1.0).abs() > 1e-12 {
        failures.push(format!("S = -1: |f| {:.2e}, lambda {}", constant.f.max_abs(), constant.lambda));
    }

    let sine = grid.sample(|x, y| -1.0 + 0.5 * (2.0 * PI * x).sin() + 0.2 * (2.0 * PI * (x + y)).cos());
    let problem = YamabeProblem::new(sine, 2);
    let a = solve_chya(&grid, &problem).unwrap();
    let start = grid.sample(|x, y| 0.8 * (2.0 * PI * y).cos() - 0.4 * (4.0 * PI * x).sin() + 1.5);
    let b = solve_chya_from(&grid, &problem, Some(&start)).unwrap();
    let gap = a.f.zip(&b.f, |p, q| p - q).unwrap().max_abs().max((a.lambda - b.lambda).abs());
    if gap >= 1e-7 {
        failures.push(format!("initializations differ by {gap:.2e}"));
    }

    let grid128 = PeriodicGrid::new(128).unwrap();
    let big = grid128.sample(|x, y| -1.0 + 0.5 * (2.0 * PI * x).sin() + 0.2 * (2.0 * PI * (x + y)).cos());
    let clock = Instant::now();
    let big_sol = solve_chya(&grid128, &YamabeProblem::new(big, 2));
    let elapsed = clock.elapsed().as_secs_f64();
    if big_sol.is_err() || elapsed >= 10.0 {
        failures.push(format!("N = 128: {:?} in {elapsed:.2} s", big_sol.err()));
    }
    Outcome::new(
        failures,
        format!("synthetic |f - v| {recovery:.1e}, law spread {spread:.1e}, init gap {gap:.1e}, N = 128 in {elapsed:.2} s"),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let c = q(3, 1);
    for entry in catalog::entries() {
        for p in entry.default_params() {
            let alg = entry.algebra(&p);
            let h = entry.metric(&p).unwrap();
            let comp = Computation::<CQ>::new(entry, &p).unwrap();
            let rep = &comp.report;
            let at = format!("{} at {}", entry.name, p.render());
            let d_ric1 = alg.d(&ricci_form(RicciKind::First, &comp.tensor, &h)).unwrap();
            if !d_ric1.is_empty() {
                failures.push(format!("{at}: d Ric1 != 0"));
            }
            if trace_with(&rep.ric1, &h) != rep.s_chern || trace_with(&rep.ric2, &h) != rep.s_chern {
                failures.push(format!("{at}: traces"));
            }
            if comp.tensor.pair_symmetry_defect() != 0.0 {
                failures.push(format!("{at}: pair symmetry"));
            }
            let scaled: HermitianMetric<CQ> = h.scaled(&c).unwrap();
            let curv = chern_curvature(&alg, &scaled).unwrap();
            for (kind, e) in RicciKind::ALL.iter().zip(&rep.einstein) {
                let e_c = einstein_residual_from(*kind, EinsteinMode::Strong, &curv.tensor, &scaled);
                if e_c.lambda != e.lambda.clone() / c.clone() {
                    failures.push(format!("{at}: kind {kind} lambda under rescaling"));
                }
            }
            checked += 1;
        }
    }
    let mut bl = Vec::new();
    for name in ["hopf", "ovando-r4"] {
        let entry = catalog::entry(name).unwrap();
        for p in entry.default_params() {
            let h = entry.metric(&p).unwrap().to_c64();
            let curv = chern_curvature(&entry.algebra(&p).to_c64(), &h).unwrap();
            let value = bogomolov_lubke(&curv, &h).unwrap();
            if value > 1e-12 {
                failures.push(format!("{name} BL = {value:.3e} at {}", p.render()));
            }
            bl.push(value);
        }
    }
    let bl_max = bl.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Outcome::new(failures, format!("{checked} entry points exact; max BL on hopf/ovando-r4 {bl_max:.2e}"))
}

fn criterion_10() -> Outcome {
    let hopf = catalog::entry("hopf").unwrap();
    let mut failures = Vec::new();
    for r in [q(1, 1), q(2, 1), q(1, 3)] {
        let c = Computation::<CQ>::new(hopf, &hopf_params(r.clone())).unwrap();
        let half_r2 = r.clone() * r.clone() / CQ::from_i64(2);
        let t1111 = c.tensor.get(0, 0, 0, 0).clone();
        let t1122 = c.tensor.get(0, 0, 1, 1).clone();
        let abs2 = |t: &CQ| t.clone() * t.conj();
        if abs2(&t1111) != abs2(&half_r2) || abs2(&t1122) != abs2(&half_r2) {
            failures.push(format!("|Theta| magnitudes at r={}", r.render()));
        }
        // Regression constants for the convention-sensitive values.
        if t1111 != half_r2 || t1122 != half_r2 {
            failures.push(format!("Theta signs at r={}", r.render()));
        }
        if c.report.s_third != CQ::from_i64(2) / (r.clone() * r.clone()) {
            failures.push(format!("S3 = {} at r={}", c.report.s_third.render(), r.render()));
        }
        if c.report.ric3 != diag(CQ::one(), CQ::zero()) {
            failures.push(format!("Ric3 at r={}", r.render()));
        }
    }
    Outcome::new(failures, "hopf: |Theta_1111| = |Theta_1122| = r^2/2; recorded Theta_1122 = +r^2/2, S3 = 2/r^2, Ric3_11 = 1".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("hopf anchors", criterion_1),
        ("solvmanifold scalar curvatures", criterion_2),
        ("non-existence scans", criterion_3),
        ("conformal laws", criterion_4),
        ("two-backend consistency", criterion_5),
        ("coordinate-formula oracle", criterion_6),
        ("first-Chern-Einstein construction", criterion_7),
        ("Chern-Yamabe", criterion_8),
        ("structural properties", criterion_9),
        ("convention-sensitive regressions", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!("criterion {:>2} {verdict} {name}: {}", k + 1, outcome.detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
