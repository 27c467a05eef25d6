//! Coordinate-patch backend.
//!
//! Curvature comes from the local expression
//! Θ_{ij̄kl̄} = −∂ᵢ∂̄ⱼh_{kl̄} + h^{pq̄}(∂ᵢh_{kq̄})(∂̄ⱼh_{pl̄}),
//! with all derivatives computed exactly by nested hyper-dual numbers.
//! [`fd_oracle`] evaluates the same expression from finite differences and
//! serves only as an independent check.

pub mod dual;
pub mod field;
pub mod registry;

pub use dual::{CMatrix, Cx, HyperDual, Real};
pub use field::{
    ddbar, halton_points, metric_jet, Conformal, Domain, Excluded, KahlerPotential, LogDet, MetricField, MetricJet,
    RicciPotential, ScalarField,
};
pub use registry::{ChartMetric, ConformalFactor, Potential, RandomPoly};

use crate::error::{Error, Result};
use crate::invariant::{ricci, scalar_chern, CurvatureTensor, HermitianMetric, RicciKind};
use crate::linalg::Matrix;
use crate::scalar::C64;

/// Default finite-difference step of [`fd_oracle`].
pub const FD_STEP: f64 = 1e-4;

/// Curvature of a chart metric at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartCurvature {
    pub metric: HermitianMetric<C64>,
    pub tensor: CurvatureTensor<C64>,
}

impl ChartCurvature {
    pub fn ricci(&self, kind: RicciKind) -> Matrix<C64> {
        ricci(kind, &self.tensor, &self.metric)
    }

    pub fn scalar_chern(&self) -> f64 {
        scalar_chern(&self.tensor, &self.metric).re
    }
}

fn check_point(domain: &Domain, x: &[f64], margin: f64) -> Result<()> {
    if domain.contains(x, 0.0) {
        if domain.contains(x, margin) {
            return Ok(());
        }
        return Err(Error::InsufficientMargin(x.to_vec()));
    }
    Err(Error::OutsideDomain(x.to_vec()))
}

fn to_c64(m: &CMatrix<f64>) -> Matrix<C64> {
    m.iter().map(|row| row.iter().map(Cx::value).collect()).collect()
}

/// Θ from a jet; both differentiation backends end here.
pub fn curvature_from_jet(jet: &MetricJet) -> Result<ChartCurvature> {
    let metric = HermitianMetric::new(jet.h.clone())?;
    let n = metric.dim();
    let tensor = CurvatureTensor::from_fn(n, |i, j, k, l| {
        let mut v = -jet.ddbar[i][j][k][l];
        for p in 0..n {
            for q in 0..n {
                v += metric.h_inv(p, q) * jet.dz[i][k][q] * jet.dzbar[j][p][l];
            }
        }
        v
    });
    Ok(ChartCurvature { metric, tensor })
}

pub fn curvature_at<M: MetricField>(m: &M, x: &[f64]) -> Result<ChartCurvature> {
    check_point(&m.domain(), x, 0.0)?;
    curvature_from_jet(&metric_jet(m, x))
}

pub fn metric_at<M: MetricField>(m: &M, x: &[f64]) -> Result<HermitianMetric<C64>> {
    check_point(&m.domain(), x, 0.0)?;
    HermitianMetric::new(to_c64(&m.metric(x)))
}

/// −∂ᵢ∂̄ⱼ log det h, computed without the curvature tensor.
pub fn ric1_logdet_at<M: MetricField>(m: &M, x: &[f64]) -> Result<Matrix<C64>> {
    metric_at(m, x)?;
    let hess = ddbar(&LogDet { metric: m }, x);
    Ok(hess.iter().map(|row| row.iter().map(|v| -v.value()).collect()).collect())
}

/// h^{jk̄}∂ⱼ∂̄ₖf.
fn trace_hessian(h: &HermitianMetric<C64>, hess: &Matrix<C64>) -> f64 {
    let n = h.dim();
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            acc += h.h_inv(j, k) * hess[j][k];
        }
    }
    acc.re
}

fn complex_hessian<F: ScalarField>(f: &F, x: &[f64]) -> Matrix<C64> {
    to_c64(&ddbar(f, x))
}

/// Δ^Ch f = −2h^{jk̄}∂²_{jk̄}f.
pub fn chern_laplacian_at<M: MetricField, F: ScalarField>(m: &M, f: &F, x: &[f64]) -> Result<f64> {
    let h = metric_at(m, x)?;
    check_point(&f.domain(), x, 0.0)?;
    Ok(-2.0 * trace_hessian(&h, &complex_hessian(f, x)))
}

/// Largest entrywise difference relative to the largest entry on either side.
pub fn relative_discrepancy<'a>(pairs: impl IntoIterator<Item = (&'a C64, &'a C64)>) -> f64 {
    let (diff, scale) =
        pairs.into_iter().fold((0.0f64, 0.0f64), |(d, s), (a, b)| (d.max((a - b).norm()), s.max(a.norm()).max(b.norm())));
    relative(diff, scale)
}

fn matrix_discrepancy(a: &Matrix<C64>, b: &Matrix<C64>) -> f64 {
    relative_discrepancy(a.iter().flatten().zip(b.iter().flatten()))
}

/// Discrepancies of the conformal-change laws for ω_f = e^f ω at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalReport {
    /// (Θ_f)_{ij̄kl̄} against e^f(Θ_{ij̄kl̄} − h_{kl̄}∂²_{ij̄}f).
    pub theta: f64,
    /// Ric^(1)(ω_f) against Ric^(1)(ω) − n∂²_{ij̄}f.
    pub ric1: f64,
    /// Ric^(2)(ω_f) against Ric^(2)(ω) − (h^{jk̄}∂²_{jk̄}f)·h, the trace of the Θ_f law.
    pub ric2: f64,
    /// Ric^(2)(ω_f) against Ric^(2)(ω) − Δ^Ch f·h with Δ^Ch f = −2h^{jk̄}∂²_{jk̄}f,
    /// reported for comparison only.
    pub ric2_literal: f64,
}

impl ConformalReport {
    /// Worst of the asserted laws (the literal variant is excluded).
    pub fn max(&self) -> f64 {
        self.theta.max(self.ric1).max(self.ric2)
    }
}

pub fn conformal_check<M: MetricField, F: ScalarField>(m: &M, f: &F, x: &[f64]) -> Result<ConformalReport> {
    let base = curvature_at(m, x)?;
    let conf = Conformal::new(m, f, 1.0);
    let changed = curvature_at(&conf, x)?;
    let n = base.metric.dim();
    let hess = complex_hessian(f, x);
    let ef = f.eval(x).exp();
    let h = &base.metric;
    let max_abs = |it: &mut dyn Iterator<Item = C64>| it.map(|v| v.norm()).fold(0.0, f64::max);
    let idx4 = || (0..n.pow(4)).map(move |t| (t / n.pow(3), (t / n / n) % n, (t / n) % n, t % n));

    // Each law is measured against the largest term that enters it, so laws
    // whose two sides both vanish are not judged on round-off alone.
    let theta_diff = max_abs(&mut idx4().map(|(i, j, k, l)| {
        changed.tensor.get(i, j, k, l) - (base.tensor.get(i, j, k, l) - h.h(k, l) * hess[i][j]) * ef
    }));
    let theta_scale = max_abs(&mut idx4().map(|(i, j, k, l)| *changed.tensor.get(i, j, k, l)))
        .max(ef * base.tensor.max_abs())
        .max(ef * max_abs(&mut idx4().map(|(i, j, k, l)| h.h(k, l) * hess[i][j])));

    let pairs = || (0..n * n).map(move |t| (t / n, t % n));
    let ric1_f = changed.ricci(RicciKind::First);
    let ric1 = base.ricci(RicciKind::First);
    let ric1_diff = max_abs(&mut pairs().map(|(i, j)| ric1_f[i][j] - (ric1[i][j] - hess[i][j] * n as f64)));
    let ric1_scale = crate::linalg::max_abs(&ric1_f)
        .max(crate::linalg::max_abs(&ric1))
        .max(n as f64 * crate::linalg::max_abs(&hess));

    let ric2_f = changed.ricci(RicciKind::Second);
    let ric2 = base.ricci(RicciKind::Second);
    let tr = trace_hessian(h, &hess);
    let ric2_diff = |c: f64| max_abs(&mut pairs().map(|(k, l)| ric2_f[k][l] - (ric2[k][l] - h.h(k, l) * c)));
    let ric2_scale = |c: f64| {
        crate::linalg::max_abs(&ric2_f).max(crate::linalg::max_abs(&ric2)).max(c.abs() * crate::linalg::max_abs(h.matrix()))
    };
    Ok(ConformalReport {
        theta: relative(theta_diff, theta_scale),
        ric1: relative(ric1_diff, ric1_scale),
        ric2: relative(ric2_diff(tr), ric2_scale(tr)),
        ric2_literal: relative(ric2_diff(-2.0 * tr), ric2_scale(-2.0 * tr)),
    })
}

fn relative(diff: f64, scale: f64) -> f64 {
    if diff == 0.0 { 0.0 } else { diff / scale.max(f64::MIN_POSITIVE) }
}

/// ω_f = e^{f/n}·√−1∂∂̄Φ with f the Ricci potential of √−1∂∂̄Φ.
#[derive(Clone, Debug)]
pub struct FirstChernEinstein<F> {
    pub metric: Conformal<KahlerPotential<F>, RicciPotential<F>>,
    pub sign: f64,
}

/// Pointwise verification of Ric^(1)(ω_f) = sign·e^{−f/n}·ω_f.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstChernEinsteinReport {
    pub points: usize,
    pub max_discrepancy: f64,
    /// Smallest and largest Einstein factor seen.
    pub factor_range: (f64, f64),
}

pub fn first_ce_from_potential<F: ScalarField + Clone>(potential: F, sign: f64) -> Result<FirstChernEinstein<F>> {
    if sign != 1.0 && sign != -1.0 {
        return Err(Error::Invalid(format!("sign must be ±1, got {sign}")));
    }
    let n = potential.dim() as f64;
    let kahler = KahlerPotential { potential: potential.clone() };
    let f = RicciPotential { potential, sign };
    Ok(FirstChernEinstein { metric: Conformal::new(kahler, f, 1.0 / n), sign })
}

impl<F: ScalarField + Clone> FirstChernEinstein<F> {
    /// Einstein factor sign·e^{−f/n}.
    pub fn factor_at(&self, x: &[f64]) -> f64 {
        let n = self.metric.dim() as f64;
        self.sign * (-self.metric.factor.eval(x) / n).exp()
    }

    /// Relative discrepancy of Ric^(1)(ω_f) against factor·h_f at one point.
    pub fn discrepancy_at(&self, x: &[f64]) -> Result<f64> {
        // ∂∂̄Φ must be positive definite where the construction is used.
        metric_at(&KahlerPotential { potential: self.metric.factor.potential.clone() }, x)?;
        let curv = curvature_at(&self.metric, x)?;
        let ric1 = curv.ricci(RicciKind::First);
        let lambda = self.factor_at(x);
        let target: Matrix<C64> = curv.metric.matrix().iter().map(|row| row.iter().map(|v| v * lambda).collect()).collect();
        Ok(matrix_discrepancy(&ric1, &target))
    }

    pub fn verify(&self, points: &[Vec<f64>]) -> Result<FirstChernEinsteinReport> {
        let mut max_discrepancy = 0.0f64;
        let mut range = (f64::INFINITY, f64::NEG_INFINITY);
        for x in points {
            max_discrepancy = max_discrepancy.max(self.discrepancy_at(x)?);
            let lambda = self.factor_at(x);
            range = (range.0.min(lambda), range.1.max(lambda));
        }
        Ok(FirstChernEinsteinReport { points: points.len(), max_discrepancy, factor_range: range })
    }
}

/// Curvature from central differences of h with one Richardson extrapolation.
pub fn fd_oracle<M: MetricField>(m: &M, x: &[f64], step: f64) -> Result<ChartCurvature> {
    check_point(&m.domain(), x, 2.0 * step)?;
    let coarse = fd_partials(m, x, step);
    let fine = fd_partials(m, x, step / 2.0);
    let extrapolate = |c: &CMatrix<f64>, f: &CMatrix<f64>| -> CMatrix<f64> {
        c.iter()
            .zip(f)
            .map(|(rc, rf)| rc.iter().zip(rf).map(|(a, b)| (b.scale(4.0) - *a).scale(1.0 / 3.0)).collect())
            .collect()
    };
    let gx: Vec<CMatrix<f64>> = coarse.0.iter().zip(&fine.0).map(|(c, f)| extrapolate(c, f)).collect();
    let gxx: Vec<Vec<CMatrix<f64>>> = coarse
        .1
        .iter()
        .zip(&fine.1)
        .map(|(rc, rf)| rc.iter().zip(rf).map(|(c, f)| extrapolate(c, f)).collect())
        .collect();
    curvature_from_jet(&MetricJet::from_real_partials(m.metric(x), &gx, &gxx))
}

type Partials = (Vec<CMatrix<f64>>, Vec<Vec<CMatrix<f64>>>);

fn fd_partials<M: MetricField>(m: &M, x: &[f64], step: f64) -> Partials {
    let dim = x.len();
    let at = |shifts: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(a, s) in shifts {
            y[a] += s;
        }
        m.metric(&y)
    };
    let combine = |terms: &[(f64, CMatrix<f64>)], denom: f64| -> CMatrix<f64> {
        let n = terms[0].1.len();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| terms.iter().fold(Cx::zero(), |acc, (c, h)| acc + h[k][l].scale(*c)).scale(1.0 / denom))
                    .collect()
            })
            .collect()
    };
    let center = m.metric(x);
    let gx = (0..dim)
        .map(|a| combine(&[(1.0, at(&[(a, step)])), (-1.0, at(&[(a, -step)]))], 2.0 * step))
        .collect();
    let mut gxx = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in a..dim {
            let v = if a == b {
                combine(&[(1.0, at(&[(a, step)])), (-2.0, center.clone()), (1.0, at(&[(a, -step)]))], step * step)
            } else {
                combine(
                    &[
                        (1.0, at(&[(a, step), (b, step)])),
                        (-1.0, at(&[(a, step), (b, -step)])),
                        (-1.0, at(&[(a, -step), (b, step)])),
                        (1.0, at(&[(a, -step), (b, -step)])),
                    ],
                    4.0 * step * step,
                )
            };
            gxx[b][a] = v.clone();
            gxx[a][b] = v;
        }
    }
    (gx, gxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z10: [f64; 4] = [1.0, 0.0, 0.0, 0.0];

    fn points<M: MetricField>(m: &M, count: usize) -> Vec<Vec<f64>> {
        halton_points(&m.domain(), count, 1, 0.05)
    }

    fn scaled(h: &HermitianMetric<C64>, c: f64) -> Matrix<C64> {
        h.matrix().iter().map(|row| row.iter().map(|v| v * c).collect()).collect()
    }

    #[test]
    fn flat_metric_has_zero_curvature() {
        let c = curvature_at(&ChartMetric::Flat, &[0.3, -0.2, 0.5, 0.1]).unwrap();
        assert_eq!(c.tensor.max_abs(), 0.0);
    }

    #[test]
    fn hopf_chart_is_second_chern_einstein() {
        // r = 1: h = δ/(2|z|²), Einstein factor 2; r = √2: h = δ/|z|², factor 1.
        for (r, lambda) in [(1.0, 2.0), (2f64.sqrt(), 1.0)] {
            let m = ChartMetric::HopfChart { r };
            for x in std::iter::once(Z10.to_vec()).chain(points(&m, 10)) {
                let c = curvature_at(&m, &x).unwrap();
                let d = matrix_discrepancy(&c.ricci(RicciKind::Second), &scaled(&c.metric, lambda));
                assert!(d < 1e-12, "r={r} x={x:?} d={d}");
            }
        }
    }

    #[test]
    fn ric1_two_paths_agree() {
        for m in ChartMetric::all(7) {
            for x in points(&m, 20) {
                let c = curvature_at(&m, &x).unwrap();
                let d = matrix_discrepancy(&c.ricci(RicciKind::First), &ric1_logdet_at(&m, &x).unwrap());
                assert!(d < 1e-8, "{} {x:?} {d}", m.name());
            }
        }
    }

    #[test]
    fn fubini_study_product_has_ric1_twice_the_metric() {
        let m = ChartMetric::FsProduct;
        for x in points(&m, 20) {
            let ric1 = ric1_logdet_at(&m, &x).unwrap();
            let h = metric_at(&m, &x).unwrap();
            assert!(matrix_discrepancy(&ric1, &scaled(&h, 2.0)) < 1e-12);
        }
    }

    #[test]
    fn hopf_chart_scalar_curvature_is_trace_of_ric1() {
        let m = ChartMetric::HopfChart { r: 1.0 };
        let c = curvature_at(&m, &Z10).unwrap();
        let tr = crate::invariant::trace_with(&c.ricci(RicciKind::First), &c.metric);
        assert!((tr.re - c.scalar_chern()).abs() < 1e-12);
        assert!((c.scalar_chern() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn kahler_metrics_have_kahler_symmetries() {
        let m = ChartMetric::FsProduct;
        #[derive(Clone)]
        struct Convex;
        impl ScalarField for Convex {
            fn dim(&self) -> usize {
                2
            }
            // |z|² + 0.3|z|⁴ + 0.1·x₁x₂y₁
            fn eval<T: Real>(&self, x: &[T]) -> T {
                let r2 = x.iter().fold(T::zero(), |acc, v| acc + *v * *v);
                r2 + (r2 * r2).scale(0.3) + (x[0] * x[2] * x[1]).scale(0.1)
            }
        }
        let kp = KahlerPotential { potential: Convex };
        for x in points(&m, 5) {
            for t in [curvature_at(&m, &x).unwrap().tensor, curvature_at(&kp, &x).unwrap().tensor] {
                for (i, j, k, l) in all_indices(2) {
                    let a = t.get(i, j, k, l);
                    let scale = t.max_abs().max(1e-300);
                    assert!((a - t.get(k, j, i, l)).norm() / scale < 1e-10);
                    assert!((a - t.get(i, l, k, j)).norm() / scale < 1e-10);
                }
            }
        }
    }

    fn all_indices(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        out.push((i, j, k, l));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn conformal_laws_hold() {
        let cases: Vec<(ChartMetric, ConformalFactor)> = vec![
            (ChartMetric::Flat, ConformalFactor::Constant(0.4)),
            (ChartMetric::Flat, ConformalFactor::Abs2Z1),
            (ChartMetric::HopfChart { r: 1.0 }, ConformalFactor::LogNorm),
            (ChartMetric::RandomPoly(RandomPoly::new(3)), ConformalFactor::Trig),
        ];
        for (m, f) in cases {
            for x in points(&m, 10) {
                let r = conformal_check(&m, &f, &x).unwrap();
                assert!(r.max() < 1e-8, "{} {} {r:?}", m.name(), f.name());
            }
        }
    }

    #[test]
    fn literal_second_law_differs_for_nonconstant_factors() {
        let r = conformal_check(&ChartMetric::Flat, &ConformalFactor::Abs2Z1, &[0.2, 0.1, -0.3, 0.4]).unwrap();
        assert!(r.ric2 < 1e-12);
        assert!(r.ric2_literal > 0.1);
    }

    #[test]
    fn chern_laplacian_values() {
        struct XSquared;
        impl ScalarField for XSquared {
            fn dim(&self) -> usize {
                2
            }
            fn eval<T: Real>(&self, x: &[T]) -> T {
                x[0] * x[0]
            }
        }
        struct Harmonic;
        impl ScalarField for Harmonic {
            fn dim(&self) -> usize {
                2
            }
            // Re(z₁³) + Im(z₁z₂)
            fn eval<T: Real>(&self, x: &[T]) -> T {
                x[0] * x[0] * x[0] - (x[0] * x[1] * x[1]).scale(3.0) + x[0] * x[3] + x[1] * x[2]
            }
        }
        let x = [0.3, -0.2, 0.5, 0.1];
        assert!((chern_laplacian_at(&ChartMetric::Flat, &XSquared, &x).unwrap() + 1.0).abs() < 1e-14);
        assert!(chern_laplacian_at(&ChartMetric::Flat, &Harmonic, &x).unwrap().abs() < 1e-14);
        assert_eq!(chern_laplacian_at(&ChartMetric::Flat, &ConformalFactor::Constant(2.0), &x).unwrap(), 0.0);
    }

    #[test]
    fn chern_laplacian_matches_euclidean_laplacian_on_flat_metrics() {
        // For h = c·Id, Δ^Ch f = −(1/2c)·Σₐ ∂²f/∂xₐ².
        struct Scaled(f64);
        impl MetricField for Scaled {
            fn dim(&self) -> usize {
                2
            }
            fn metric<T: Real>(&self, _x: &[T]) -> CMatrix<T> {
                let c = Cx::real(T::from_f64(self.0));
                vec![vec![c, Cx::zero()], vec![Cx::zero(), c]]
            }
        }
        let f = ConformalFactor::Trig;
        for x in points(&ChartMetric::Flat, 10) {
            let euclid: f64 = (0..4).map(|a| f.eval(&field::lift(&x, a, a)).e12).sum();
            let got = chern_laplacian_at(&Scaled(2.5), &f, &x).unwrap();
            assert!((got + euclid / 5.0).abs() < 1e-13);
        }
    }

    #[test]
    fn first_chern_einstein_from_potentials() {
        let flat = first_ce_from_potential(Potential::Flat, 1.0).unwrap();
        let x = [0.3, -0.2, 0.5, 0.1];
        let phi = Potential::Flat.eval(&x);
        assert!((flat.metric.factor.eval(&x) + phi).abs() < 1e-14);
        assert!(flat.discrepancy_at(&x).unwrap() < 1e-12);

        let pts = points(&ChartMetric::FsProduct, 30);
        for sign in [1.0, -1.0] {
            let ce = first_ce_from_potential(Potential::FsProduct, sign).unwrap();
            let report = ce.verify(&pts).unwrap();
            assert!(report.max_discrepancy < 1e-7, "{report:?}");
            assert_eq!(report.factor_range.0.signum(), sign);
        }
        assert!(first_ce_from_potential(Potential::Flat, 0.5).is_err());
    }

    #[test]
    fn non_convex_potential_is_rejected() {
        #[derive(Clone)]
        struct Saddle;
        impl ScalarField for Saddle {
            fn dim(&self) -> usize {
                2
            }
            fn eval<T: Real>(&self, x: &[T]) -> T {
                x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3]
            }
        }
        let ce = first_ce_from_potential(Saddle, 1.0).unwrap();
        assert!(matches!(ce.discrepancy_at(&[0.1, 0.0, 0.0, 0.0]), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn finite_differences_agree_with_forward_mode() {
        assert!(fd_oracle(&ChartMetric::Flat, &[0.1, 0.2, 0.3, 0.4], FD_STEP).unwrap().tensor.max_abs() < 1e-10);
        let hopf = ChartMetric::HopfChart { r: 1.0 };
        let exact = curvature_at(&hopf, &Z10).unwrap();
        assert!(fd_oracle(&hopf, &Z10, FD_STEP).unwrap().tensor.relative_distance(&exact.tensor) < 1e-6);
        for m in ChartMetric::all(11) {
            for x in points(&m, 5) {
                let a = curvature_at(&m, &x).unwrap().tensor;
                let b = fd_oracle(&m, &x, FD_STEP).unwrap().tensor;
                assert!(a.relative_distance(&b) < 1e-6, "{} {x:?}", m.name());
            }
        }
    }

    #[test]
    fn domain_errors() {
        let hopf = ChartMetric::HopfChart { r: 1.0 };
        assert!(matches!(curvature_at(&hopf, &[0.0; 4]), Err(Error::OutsideDomain(_))));
        assert!(matches!(curvature_at(&ChartMetric::Flat, &[2.0, 0.0, 0.0, 0.0]), Err(Error::OutsideDomain(_))));
        assert!(matches!(
            fd_oracle(&ChartMetric::Flat, &[1.0 - 1e-5, 0.0, 0.0, 0.0], FD_STEP),
            Err(Error::InsufficientMargin(_))
        ));
    }

    #[test]
    fn registry_names_round_trip() {
        for m in ChartMetric::all(0) {
            assert_eq!(ChartMetric::from_name(m.name(), 0, 1.0).unwrap().name(), m.name());
        }
        assert!(ChartMetric::from_name("nope", 0, 1.0).is_err());
        assert_eq!(ConformalFactor::from_name("constant=2").unwrap(), ConformalFactor::Constant(2.0));
        assert_eq!(RandomPoly::new(5), RandomPoly::new(5));
        assert_ne!(RandomPoly::new(5), RandomPoly::new(6));
    }
}
