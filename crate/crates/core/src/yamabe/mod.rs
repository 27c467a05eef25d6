//! Chern-Yamabe normalization on the flat unit torus.
//!
//! Given the Chern scalar curvature S of a reference metric η, the equation
//!
//! ```text
//! Δf + S/n = λ e^{−f}
//! ```
//!
//! makes e^{−f}η a metric of constant Chern scalar curvature nλ. Solutions
//! come in families (f + c, λe^c); the solver fixes mean(f) = 0, after which
//! λ = mean(S/n) / mean(e^{−f}). Only mean(S) ≤ 0 is handled: the positive
//! branch is an open problem and is refused.

mod grid;
mod problem;

use thiserror::Error;

pub use grid::{GridField, PeriodicGrid};
pub use problem::{SourceSpec, YamabeProblemFile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum YamabeError {
    #[error("grid resolution {0} is too small (need at least 4)")]
    InvalidGrid(usize),
    #[error("field has {found} samples, grid expects {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("mean scalar curvature {mean:e} is positive: existence is the open Chern-Yamabe conjecture, not attempted")]
    OpenConjecture { mean: f64 },
    #[error("Newton iteration did not converge in {iterations} steps (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("complex dimension must be positive")]
    InvalidDimension,
    #[error("problem file: {0}")]
    Problem(String),
}

/// Scalar-curvature field with solver settings.
#[derive(Clone, Debug, PartialEq)]
pub struct YamabeProblem {
    pub scalar: GridField,
    pub dim: usize,
    pub tolerance: f64,
    pub max_iter: usize,
}

impl YamabeProblem {
    pub fn new(scalar: GridField, dim: usize) -> Self {
        YamabeProblem { scalar, dim, tolerance: 1e-9, max_iter: 200 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Branch {
    /// mean(S) = 0: linear Poisson problem, λ = 0.
    Poisson,
    /// mean(S) < 0: Newton iteration.
    Negative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct YamabeSolution {
    /// Conformal factor, mean zero.
    pub f: GridField,
    pub lambda: f64,
    /// max |Δf + S/n − λe^{−f}|.
    pub residual: f64,
    pub iterations: usize,
    pub branch: Branch,
}

/// Relative size below which mean(S) counts as zero.
const MEAN_ZERO_REL: f64 = 1e-12;

pub fn solve_chya(grid: &PeriodicGrid, problem: &YamabeProblem) -> Result<YamabeSolution, YamabeError> {
    solve_chya_from(grid, problem, None)
}

/// As [`solve_chya`], starting the Newton iteration at `initial` (ignored on
/// the Poisson branch, whose solution is direct).
pub fn solve_chya_from(
    grid: &PeriodicGrid,
    problem: &YamabeProblem,
    initial: Option<&GridField>,
) -> Result<YamabeSolution, YamabeError> {
    if problem.dim == 0 {
        return Err(YamabeError::InvalidDimension);
    }
    let s = &problem.scalar;
    let n = problem.dim as f64;
    let source = s.map(|v| v / n);
    let mean = source.mean();
    if mean.abs() <= MEAN_ZERO_REL * s.max_abs().max(1.0) {
        let f = grid.inverse_laplacian(&source.map(|v| -v))?;
        let residual = grid.laplacian(&f)?.zip(&source, |a, b| a + b - mean)?.max_abs().max(mean.abs());
        return Ok(YamabeSolution { f, lambda: 0.0, residual, iterations: 0, branch: Branch::Poisson });
    }
    if mean > 0.0 {
        return Err(YamabeError::OpenConjecture { mean: mean * n });
    }
    // With λ₀ = mean(S/n) held fixed, F(f) = Δf + S/n − λ₀e^{−f} has the
    // symmetric positive definite −F'(f) = −Δ + |λ₀|e^{−f}. Its solution,
    // shifted to mean zero, is the normalized pair.
    let lambda0 = mean;
    let residual_of = |f: &GridField| -> Result<GridField, YamabeError> {
        let lap = grid.laplacian(f)?;
        let nonlinear = f.map(|v| lambda0 * (-v).exp());
        lap.zip(&source, |a, b| a + b)?.zip(&nonlinear, |a, b| a - b)
    };
    let mut f = match initial {
        Some(f0) if f0.resolution() != grid.resolution() => {
            return Err(YamabeError::ShapeMismatch { expected: grid.resolution().pow(2), found: f0.values().len() })
        }
        Some(f0) => f0.clone(),
        None => GridField::constant(grid.resolution(), 0.0),
    };
    let mut r = residual_of(&f)?;
    let mut norm = r.max_abs();
    let mut iterations = 0;
    while norm > problem.tolerance {
        if iterations == problem.max_iter {
            return Err(YamabeError::NotConverged { iterations, residual: norm });
        }
        iterations += 1;
        let weight = f.map(|v| -lambda0 * (-v).exp());
        let step = conjugate_gradient(grid, &weight, &r)?;
        let mut t = 1.0;
        loop {
            let trial = f.zip(&step, |a, d| a + t * d)?;
            let trial_r = residual_of(&trial)?;
            let trial_norm = trial_r.max_abs();
            if trial_norm < norm || t < 1e-6 {
                f = trial;
                r = trial_r;
                norm = trial_norm;
                break;
            }
            t *= 0.5;
        }
    }
    let shift = f.mean();
    let f = f.map(|v| v - shift);
    let lambda = lambda0 * (-shift).exp();
    let residual = grid
        .laplacian(&f)?
        .zip(&source, |a, b| a + b)?
        .zip(&f, |a, v| a - lambda * (-v).exp())?
        .max_abs();
    Ok(YamabeSolution { f, lambda, residual, iterations, branch: Branch::Negative })
}

/// Solves (−Δ + w) x = b for a positive weight field w, preconditioned by
/// (−Δ + mean w)^{-1}.
fn conjugate_gradient(grid: &PeriodicGrid, weight: &GridField, b: &GridField) -> Result<GridField, YamabeError> {
    let shift = weight.mean();
    let apply = |x: &GridField| -> Result<GridField, YamabeError> {
        grid.laplacian(x)?.map(|l| -l).zip(&weight.zip(x, |w, v| w * v)?, |a, b| a + b)
    };
    let dot = |a: &GridField, b: &GridField| a.values().iter().zip(b.values()).map(|(x, y)| x * y).sum::<f64>();
    let mut x = GridField::constant(grid.resolution(), 0.0);
    let mut r = b.clone();
    let mut z = grid.shifted_inverse(&r, shift);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let b_norm = dot(b, b).sqrt();
    for _ in 0..500 {
        if dot(&r, &r).sqrt() <= 1e-14 * b_norm.max(1e-300) {
            break;
        }
        let ap = apply(&p)?;
        let alpha = rz / dot(&p, &ap);
        x = x.zip(&p, |a, d| a + alpha * d)?;
        r = r.zip(&ap, |a, d| a - alpha * d)?;
        z = grid.shifted_inverse(&r, shift);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        p = z.zip(&p, |a, d| a + beta * d)?;
    }
    Ok(x)
}

/// Chern scalar curvature of e^{−f}ω: e^{f}(S_ω + nΔf).
pub fn conformal_scalar_law(grid: &PeriodicGrid, s: &GridField, f: &GridField, n: usize) -> Result<GridField, YamabeError> {
    let lap = grid.laplacian(f)?;
    let inner = s.zip(&lap, |a, l| a + n as f64 * l)?;
    inner.zip(f, |a, v| v.exp() * a)
}

/// Volume-normalized integral of S over the unit torus.
pub fn gauduchon_degree_grid(s: &GridField) -> f64 {
    s.mean()
}
