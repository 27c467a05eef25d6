//! Metric and scalar fields on a coordinate box in Cⁿ.
//!
//! Points are given in real coordinates `x[2i] = Re zᵢ`, `x[2i+1] = Im zᵢ`.
//! Fields are generic over [`Real`] so the same definition is evaluated on
//! plain floats and on nested hyper-dual numbers.

use super::dual::{det, CMatrix, Cx, HyperDual, Real};
use crate::scalar::C64;

/// Minimum distance kept from an excluded set.
pub const EXCLUDED_MARGIN: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Excluded {
    Nothing,
    /// The origin z = 0.
    Origin,
}

/// Axis-aligned box with an optional excluded set.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub excluded: Excluded,
}

impl Domain {
    /// The cube [−half, half]^{2n}.
    pub fn cube(n: usize, half: f64) -> Self {
        Domain { lo: vec![-half; 2 * n], hi: vec![half; 2 * n], excluded: Excluded::Nothing }
    }

    pub fn excluding(mut self, excluded: Excluded) -> Self {
        self.excluded = excluded;
        self
    }

    pub fn real_dim(&self) -> usize {
        self.lo.len()
    }

    pub fn distance_to_excluded(&self, x: &[f64]) -> f64 {
        match self.excluded {
            Excluded::Nothing => f64::INFINITY,
            Excluded::Origin => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        }
    }

    /// Inside the box by at least `margin`, and away from the excluded set by
    /// at least `max(margin, EXCLUDED_MARGIN)`.
    pub fn contains(&self, x: &[f64], margin: f64) -> bool {
        x.len() == self.real_dim()
            && x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (lo, hi))| *v >= lo + margin && *v <= hi - margin)
            && self.distance_to_excluded(x) >= margin.max(EXCLUDED_MARGIN)
    }

    pub fn intersect(&self, other: &Domain) -> Domain {
        let excluded = if self.excluded == Excluded::Nothing { other.excluded } else { self.excluded };
        Domain {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.max(*b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.min(*b)).collect(),
            excluded,
        }
    }
}

/// A Hermitian metric h_{ij̄}(z) on a coordinate box.
pub trait MetricField: Sync {
    fn dim(&self) -> usize;
    fn metric<T: Real>(&self, x: &[T]) -> CMatrix<T>;
    fn domain(&self) -> Domain {
        Domain::cube(self.dim(), 1.0)
    }
}

/// A real function on a coordinate box.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;
    fn eval<T: Real>(&self, x: &[T]) -> T;
    fn domain(&self) -> Domain {
        Domain::cube(self.dim(), 1.0)
    }
}

impl<M: MetricField> MetricField for &M {
    fn dim(&self) -> usize {
        (*self).dim()
    }
    fn metric<T: Real>(&self, x: &[T]) -> CMatrix<T> {
        (*self).metric(x)
    }
    fn domain(&self) -> Domain {
        (*self).domain()
    }
}

impl<F: ScalarField> ScalarField for &F {
    fn dim(&self) -> usize {
        (*self).dim()
    }
    fn eval<T: Real>(&self, x: &[T]) -> T {
        (*self).eval(x)
    }
    fn domain(&self) -> Domain {
        (*self).domain()
    }
}

/// `x` lifted to hyper-duals, seeded along real direction `a` (ε₁) and `b` (ε₂).
pub fn lift<T: Real>(x: &[T], a: usize, b: usize) -> Vec<HyperDual<T>> {
    x.iter().enumerate().map(|(k, v)| HyperDual::variable(*v, k == a, k == b)).collect()
}

/// ∂_{zᵢ}, ∂_{z̄ⱼ} and ∂_{zᵢ}∂_{z̄ⱼ} assembled from real partials.
fn dz<T: Real>(gx: &[Cx<T>], i: usize) -> Cx<T> {
    let half = T::from_f64(0.5);
    (gx[2 * i] - Cx::i() * gx[2 * i + 1]).scale(half)
}

fn dzbar<T: Real>(gx: &[Cx<T>], j: usize) -> Cx<T> {
    let half = T::from_f64(0.5);
    (gx[2 * j] + Cx::i() * gx[2 * j + 1]).scale(half)
}

fn dzdzbar<T: Real>(gxx: &[Vec<Cx<T>>], i: usize, j: usize) -> Cx<T> {
    let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
    let quarter = T::from_f64(0.25);
    (gxx[xi][xj] + gxx[yi][yj] + Cx::i() * (gxx[xi][yj] - gxx[yi][xj])).scale(quarter)
}

/// Complex Hessian ∂²f/∂zᵢ∂z̄ⱼ of a real field.
pub fn ddbar<T: Real, F: ScalarField>(f: &F, x: &[T]) -> CMatrix<T> {
    let m = x.len();
    let mut hess = vec![vec![Cx::zero(); m]; m];
    for a in 0..m {
        for b in a..m {
            let v = f.eval(&lift(x, a, b)).e12;
            hess[a][b] = Cx::real(v);
            hess[b][a] = Cx::real(v);
        }
    }
    let n = m / 2;
    (0..n).map(|i| (0..n).map(|j| dzdzbar(&hess, i, j)).collect()).collect()
}

/// Value and complex derivatives of a metric field at a float point.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet {
    pub h: Vec<Vec<C64>>,
    /// `dz[i][k][l]` = ∂h_{kl̄}/∂zᵢ.
    pub dz: Vec<Vec<Vec<C64>>>,
    /// `dzbar[j][k][l]` = ∂h_{kl̄}/∂z̄ⱼ.
    pub dzbar: Vec<Vec<Vec<C64>>>,
    /// `ddbar[i][j][k][l]` = ∂²h_{kl̄}/∂zᵢ∂z̄ⱼ.
    pub ddbar: Vec<Vec<Vec<Vec<C64>>>>,
}

impl MetricJet {
    /// Assembles the jet from real first partials `gx[a][k][l]` and second
    /// partials `gxx[a][b][k][l]`.
    pub fn from_real_partials(h: CMatrix<f64>, gx: &[CMatrix<f64>], gxx: &[Vec<CMatrix<f64>>]) -> Self {
        let n = h.len();
        let entry = |k: usize, l: usize| -> (Vec<Cx<f64>>, Vec<Vec<Cx<f64>>>) {
            let first = gx.iter().map(|g| g[k][l]).collect();
            let second = gxx.iter().map(|row| row.iter().map(|g| g[k][l]).collect()).collect();
            (first, second)
        };
        let mut jet = MetricJet {
            h: h.iter().map(|row| row.iter().map(Cx::value).collect()).collect(),
            dz: vec![vec![vec![C64::new(0.0, 0.0); n]; n]; n],
            dzbar: vec![vec![vec![C64::new(0.0, 0.0); n]; n]; n],
            ddbar: vec![vec![vec![vec![C64::new(0.0, 0.0); n]; n]; n]; n],
        };
        for k in 0..n {
            for l in 0..n {
                let (first, second) = entry(k, l);
                for i in 0..n {
                    jet.dz[i][k][l] = dz(&first, i).value();
                    jet.dzbar[i][k][l] = dzbar(&first, i).value();
                    for j in 0..n {
                        jet.ddbar[i][j][k][l] = dzdzbar(&second, i, j).value();
                    }
                }
            }
        }
        jet
    }
}

/// Exact jet by hyper-dual evaluation.
pub fn metric_jet<M: MetricField>(m: &M, x: &[f64]) -> MetricJet {
    let dim = x.len();
    let n = m.dim();
    let zero = || vec![vec![Cx::zero(); n]; n];
    let mut gx = vec![zero(); dim];
    let mut gxx = vec![vec![zero(); dim]; dim];
    let mut h = zero();
    for a in 0..dim {
        for b in a..dim {
            let val = m.metric(&lift(x, a, b));
            for k in 0..n {
                for l in 0..n {
                    let e = val[k][l];
                    if a == b {
                        gx[a][k][l] = Cx::new(e.re.e1, e.im.e1);
                        h[k][l] = Cx::new(e.re.re, e.im.re);
                    }
                    let second = Cx::new(e.re.e12, e.im.e12);
                    gxx[a][b][k][l] = second;
                    gxx[b][a][k][l] = second;
                }
            }
        }
    }
    MetricJet::from_real_partials(h, &gx, &gxx)
}

/// e^{w·f}·h.
#[derive(Clone, Debug)]
pub struct Conformal<M, F> {
    pub metric: M,
    pub factor: F,
    pub weight: f64,
}

impl<M: MetricField, F: ScalarField> Conformal<M, F> {
    pub fn new(metric: M, factor: F, weight: f64) -> Self {
        Conformal { metric, factor, weight }
    }
}

impl<M: MetricField, F: ScalarField> MetricField for Conformal<M, F> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }
    fn metric<T: Real>(&self, x: &[T]) -> CMatrix<T> {
        let e = self.factor.eval(x).scale(self.weight).exp();
        self.metric.metric(x).into_iter().map(|row| row.into_iter().map(|v| v.scale(e)).collect()).collect()
    }
    fn domain(&self) -> Domain {
        self.metric.domain().intersect(&self.factor.domain())
    }
}

/// h = ∂∂̄Φ, i.e. ω = √−1∂∂̄Φ.
#[derive(Clone, Debug)]
pub struct KahlerPotential<F> {
    pub potential: F,
}

impl<F: ScalarField> MetricField for KahlerPotential<F> {
    fn dim(&self) -> usize {
        self.potential.dim()
    }
    fn metric<T: Real>(&self, x: &[T]) -> CMatrix<T> {
        ddbar(&self.potential, x)
    }
    fn domain(&self) -> Domain {
        self.potential.domain()
    }
}

/// f = −log det(∂∂̄Φ) − sign·Φ, so that Ric^(1)(ω) = sign·ω + √−1∂∂̄f for ω = √−1∂∂̄Φ.
#[derive(Clone, Debug)]
pub struct RicciPotential<F> {
    pub potential: F,
    pub sign: f64,
}

impl<F: ScalarField> ScalarField for RicciPotential<F> {
    fn dim(&self) -> usize {
        self.potential.dim()
    }
    fn eval<T: Real>(&self, x: &[T]) -> T {
        -det(&ddbar(&self.potential, x)).re.ln() - self.potential.eval(x).scale(self.sign)
    }
    fn domain(&self) -> Domain {
        self.potential.domain()
    }
}

/// log det h of a metric field.
#[derive(Clone, Debug)]
pub struct LogDet<M> {
    pub metric: M,
}

impl<M: MetricField> ScalarField for LogDet<M> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }
    fn eval<T: Real>(&self, x: &[T]) -> T {
        det(&self.metric.metric(x)).re.ln()
    }
    fn domain(&self) -> Domain {
        self.metric.domain()
    }
}

/// The i-th Halton coordinate in `base`.
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut out = 0.0;
    while i > 0 {
        f /= base as f64;
        out += f * (i % base) as f64;
        i /= base;
    }
    out
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// `count` deterministic low-discrepancy points of `domain` that satisfy
/// `domain.contains(x, margin)`. The seed selects the starting index.
pub fn halton_points(domain: &Domain, count: usize, seed: u64, margin: f64) -> Vec<Vec<f64>> {
    let dim = domain.real_dim();
    assert!(dim <= PRIMES.len(), "Halton sampling supports up to {} real dimensions", PRIMES.len());
    let mut out = Vec::with_capacity(count);
    let mut index = 20 + seed.wrapping_mul(7919);
    let budget = index + 1000 * count as u64 + 1000;
    while out.len() < count && index < budget {
        index += 1;
        let x: Vec<f64> = (0..dim)
            .map(|d| domain.lo[d] + (domain.hi[d] - domain.lo[d]) * radical_inverse(index, PRIMES[d]))
            .collect();
        if domain.contains(&x, margin) {
            out.push(x);
        }
    }
    out
}
