//! Named test metrics and conformal factors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dual::{CMatrix, Cx, Real};
use super::field::{Domain, Excluded, MetricField, ScalarField};
use crate::error::{Error, Result};

pub const METRIC_NAMES: [&str; 4] = ["flat", "hopf-chart", "fs-product", "random-poly"];
pub const FACTOR_NAMES: [&str; 4] = ["constant", "abs2-z1", "log-norm", "trig"];

/// Hermitian matrix entries B B* + Id with B quadratic in (z, z̄).
#[derive(Clone, Debug, PartialEq)]
pub struct RandomPoly {
    pub seed: u64,
    /// `coeffs[k][l]` lists the coefficients of B_{kl} on
    /// 1, z₁, z₂, z̄₁, z̄₂, z₁z̄₂, z₂z̄₁, z₁², z̄₂².
    coeffs: Vec<Vec<[(f64, f64); 9]>>,
}

impl RandomPoly {
    pub fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeff = || (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let coeffs = (0..2).map(|_| (0..2).map(|_| std::array::from_fn(|_| coeff())).collect()).collect();
        RandomPoly { seed, coeffs }
    }

    fn b<T: Real>(&self, x: &[T]) -> CMatrix<T> {
        let z1 = Cx::new(x[0], x[1]);
        let z2 = Cx::new(x[2], x[3]);
        let monomials = [Cx::one(), z1, z2, z1.conj(), z2.conj(), z1 * z2.conj(), z2 * z1.conj(), z1 * z1, z2.conj() * z2.conj()];
        self.coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        c.iter().zip(&monomials).fold(Cx::zero(), |acc, (&(re, im), m)| {
                            acc + Cx::new(T::from_f64(re), T::from_f64(im)) * *m
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// Registered chart metrics, all of complex dimension 2.
#[derive(Clone, Debug, PartialEq)]
pub enum ChartMetric {
    /// h = Identity.
    Flat,
    /// h = (r²/2)·δ/|z|² on C² ∖ {0}, the round Hopf metric pulled back to the chart.
    HopfChart { r: f64 },
    /// h = diag(1/(1+|z₁|²)², 1/(1+|z₂|²)²).
    FsProduct,
    RandomPoly(RandomPoly),
}

impl ChartMetric {
    pub fn from_name(name: &str, seed: u64, r: f64) -> Result<Self> {
        Ok(match name {
            "flat" => ChartMetric::Flat,
            "hopf-chart" => ChartMetric::HopfChart { r },
            "fs-product" => ChartMetric::FsProduct,
            "random-poly" => ChartMetric::RandomPoly(RandomPoly::new(seed)),
            _ => return Err(Error::UnknownName(name.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChartMetric::Flat => "flat",
            ChartMetric::HopfChart { .. } => "hopf-chart",
            ChartMetric::FsProduct => "fs-product",
            ChartMetric::RandomPoly(_) => "random-poly",
        }
    }

    /// Every registered metric with default parameters.
    pub fn all(seed: u64) -> Vec<ChartMetric> {
        METRIC_NAMES.iter().map(|n| ChartMetric::from_name(n, seed, 1.0).expect("registered")).collect()
    }
}

fn diag<T: Real>(a: T, b: T) -> CMatrix<T> {
    vec![vec![Cx::real(a), Cx::zero()], vec![Cx::zero(), Cx::real(b)]]
}

fn norm2<T: Real>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, v| acc + *v * *v)
}

impl MetricField for ChartMetric {
    fn dim(&self) -> usize {
        2
    }

    fn metric<T: Real>(&self, x: &[T]) -> CMatrix<T> {
        match self {
            ChartMetric::Flat => diag(T::one(), T::one()),
            ChartMetric::HopfChart { r } => {
                let c = T::from_f64(r * r / 2.0) / norm2(x);
                diag(c, c)
            }
            ChartMetric::FsProduct => {
                let f = |a: T, b: T| T::one() / (T::one() + a * a + b * b).powi(2);
                diag(f(x[0], x[1]), f(x[2], x[3]))
            }
            ChartMetric::RandomPoly(p) => {
                let b = p.b(x);
                (0..2)
                    .map(|k| {
                        (0..2)
                            .map(|l| {
                                let bb = (0..2).fold(Cx::zero(), |acc, m| acc + b[k][m] * b[l][m].conj());
                                if k == l { bb + Cx::one() } else { bb }
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }

    fn domain(&self) -> Domain {
        match self {
            ChartMetric::HopfChart { .. } => Domain::cube(2, 1.5).excluding(Excluded::Origin),
            _ => Domain::cube(2, 1.0),
        }
    }
}

/// Registered conformal factors on C².
#[derive(Clone, Debug, PartialEq)]
pub enum ConformalFactor {
    Constant(f64),
    /// |z₁|².
    Abs2Z1,
    /// log|z|²; excludes the origin.
    LogNorm,
    /// sin(x₁)cos(y₂) + 0.3·x₂·y₁.
    Trig,
}

impl ConformalFactor {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "abs2-z1" => ConformalFactor::Abs2Z1,
            "log-norm" => ConformalFactor::LogNorm,
            "trig" => ConformalFactor::Trig,
            _ => match name.strip_prefix("constant") {
                Some("") => ConformalFactor::Constant(0.7),
                Some(v) => ConformalFactor::Constant(
                    v.trim_start_matches('=').parse().map_err(|_| Error::UnknownName(name.to_string()))?,
                ),
                None => return Err(Error::UnknownName(name.to_string())),
            },
        })
    }

    pub fn name(&self) -> String {
        match self {
            ConformalFactor::Constant(c) => format!("constant={c}"),
            ConformalFactor::Abs2Z1 => "abs2-z1".into(),
            ConformalFactor::LogNorm => "log-norm".into(),
            ConformalFactor::Trig => "trig".into(),
        }
    }
}

impl ScalarField for ConformalFactor {
    fn dim(&self) -> usize {
        2
    }

    fn eval<T: Real>(&self, x: &[T]) -> T {
        match self {
            ConformalFactor::Constant(c) => T::from_f64(*c),
            ConformalFactor::Abs2Z1 => x[0] * x[0] + x[1] * x[1],
            ConformalFactor::LogNorm => norm2(x).ln(),
            ConformalFactor::Trig => x[0].sin() * x[3].cos() + (x[2] * x[1]).scale(0.3),
        }
    }

    fn domain(&self) -> Domain {
        match self {
            ConformalFactor::LogNorm => Domain::cube(2, f64::INFINITY).excluding(Excluded::Origin),
            _ => Domain::cube(2, f64::INFINITY),
        }
    }
}

/// Kähler potentials used by the first-Chern-Einstein construction.
#[derive(Clone, Debug, PartialEq)]
pub enum Potential {
    /// |z₁|² + |z₂|².
    Flat,
    /// log(1+|z₁|²) + log(1+|z₂|²).
    FsProduct,
}

impl Potential {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "flat" => Ok(Potential::Flat),
            "fs-product" => Ok(Potential::FsProduct),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }
}

impl ScalarField for Potential {
    fn dim(&self) -> usize {
        2
    }

    fn eval<T: Real>(&self, x: &[T]) -> T {
        let a = x[0] * x[0] + x[1] * x[1];
        let b = x[2] * x[2] + x[3] * x[3];
        match self {
            Potential::Flat => a + b,
            Potential::FsProduct => (T::one() + a).ln() + (T::one() + b).ln(),
        }
    }
}
