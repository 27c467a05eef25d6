use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forms::{CoframeAlgebra, InvariantForm};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{chern_curvature, matrix_form, CurvatureTensor, HermitianMetric};

/// Which contraction of Θ_{ij̄kl̄}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RicciKind {
    /// h^{kl̄} Θ_{ij̄kl̄}, indices (i, j̄).
    First,
    /// h^{ij̄} Θ_{ij̄kl̄}, indices (k, l̄).
    Second,
    /// h^{il̄} Θ_{ij̄kl̄}, indices (k, j̄).
    Third,
}

impl RicciKind {
    pub const ALL: [RicciKind; 3] = [RicciKind::First, RicciKind::Second, RicciKind::Third];

    pub fn number(self) -> u8 {
        match self {
            RicciKind::First => 1,
            RicciKind::Second => 2,
            RicciKind::Third => 3,
        }
    }

    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(RicciKind::First),
            2 => Ok(RicciKind::Second),
            3 => Ok(RicciKind::Third),
            _ => Err(Error::Invalid(format!("Ricci kind must be 1, 2 or 3, got {k}"))),
        }
    }
}

impl fmt::Display for RicciKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Strong: the Einstein factor is fixed by the trace. Weak: least squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EinsteinMode {
    Strong,
    Weak,
}

impl FromStr for EinsteinMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(EinsteinMode::Strong),
            "weak" => Ok(EinsteinMode::Weak),
            other => Err(Error::Invalid(format!("mode must be strong or weak, got `{other}`"))),
        }
    }
}

impl fmt::Display for EinsteinMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EinsteinMode::Strong => "strong",
            EinsteinMode::Weak => "weak",
        })
    }
}

/// Coefficient matrix of the requested contraction. Kinds 1 and 2 are the
/// matrices a with Ric = √−1 a_{ij̄} φ^i∧φ̄^j; kind 3 is indexed (k, j̄).
pub fn ricci<S: Scalar>(kind: RicciKind, theta: &CurvatureTensor<S>, h: &HermitianMetric<S>) -> Matrix<S> {
    let n = h.dim();
    let mut out = vec![vec![S::zero(); n]; n];
    for (a, row) in out.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let mut acc = S::zero();
            for p in 0..n {
                for q in 0..n {
                    let term = match kind {
                        RicciKind::First => h.h_inv(p, q).clone() * theta.get(a, b, p, q).clone(),
                        RicciKind::Second => h.h_inv(p, q).clone() * theta.get(p, q, a, b).clone(),
                        RicciKind::Third => h.h_inv(p, q).clone() * theta.get(p, b, a, q).clone(),
                    };
                    acc = acc + term;
                }
            }
            *entry = acc;
        }
    }
    out
}

/// Ric^(kind) as a (1,1)-form (kinds 1 and 2).
pub fn ricci_form<S: Scalar>(kind: RicciKind, theta: &CurvatureTensor<S>, h: &HermitianMetric<S>) -> InvariantForm<S> {
    matrix_form(&ricci(kind, theta, h))
}

/// h^{ab̄} a_{ab̄}: the metric trace of a coefficient matrix indexed (a, b̄).
pub fn trace_with<S: Scalar>(a: &Matrix<S>, h: &HermitianMetric<S>) -> S {
    let n = h.dim();
    let mut acc = S::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + h.h_inv(i, j).clone() * a[i][j].clone();
        }
    }
    acc
}

/// S^Ch = h^{ij̄} h^{kl̄} Θ_{ij̄kl̄}.
pub fn scalar_chern<S: Scalar>(theta: &CurvatureTensor<S>, h: &HermitianMetric<S>) -> S {
    trace_with(&ricci(RicciKind::Second, theta, h), h)
}

/// S^(3) = h^{kj̄} h^{il̄} Θ_{ij̄kl̄}.
pub fn scalar_third<S: Scalar>(theta: &CurvatureTensor<S>, h: &HermitianMetric<S>) -> S {
    trace_with(&ricci(RicciKind::Third, theta, h), h)
}

/// Einstein factor and the coefficient max-norm of Ric − λh.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinResidual<S> {
    pub lambda: S,
    pub residual: f64,
}

/// Residual of Ric^(kind) = λ h for precomputed curvature.
///
/// Strong mode takes λ = S^Ch/n for kinds 1 and 2 and λ = S^(3)/n for kind 3
/// (the trace of the kind-3 equation). Weak mode takes the real Frobenius
/// least-squares λ = Re⟨a, h⟩ / ⟨h, h⟩.
pub fn einstein_residual_from<S: Scalar>(
    kind: RicciKind,
    mode: EinsteinMode,
    theta: &CurvatureTensor<S>,
    h: &HermitianMetric<S>,
) -> EinsteinResidual<S> {
    let n = h.dim();
    let a = ricci(kind, theta, h);
    let lambda = match mode {
        EinsteinMode::Strong => {
            let trace = match kind {
                RicciKind::Third => trace_with(&a, h),
                _ => scalar_chern(theta, h),
            };
            trace.re() / S::from_i64(n as i64)
        }
        EinsteinMode::Weak => {
            let mut num = S::zero();
            let mut den = S::zero();
            for i in 0..n {
                for j in 0..n {
                    num = num + a[i][j].clone() * h.h(i, j).conj();
                    den = den + h.h(i, j).clone() * h.h(i, j).conj();
                }
            }
            num.re() / den.re()
        }
    };
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            residual = residual.max((a[i][j].clone() - lambda.clone() * h.h(i, j).clone()).norm());
        }
    }
    EinsteinResidual { lambda, residual }
}

pub fn einstein_residual<S: Scalar>(
    kind: RicciKind,
    alg: &CoframeAlgebra<S>,
    h: &HermitianMetric<S>,
    mode: EinsteinMode,
) -> Result<EinsteinResidual<S>> {
    let curvature = chern_curvature(alg, h)?;
    Ok(einstein_residual_from(kind, mode, &curvature.tensor, h))
}

/// All contractions of one curvature computation.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciReport<S> {
    pub ric1: Matrix<S>,
    pub ric2: Matrix<S>,
    pub ric3: Matrix<S>,
    pub s_chern: S,
    pub s_third: S,
    /// Strong-mode Einstein data for kinds 1, 2, 3.
    pub einstein: [EinsteinResidual<S>; 3],
}

impl<S: Scalar> RicciReport<S> {
    pub fn new(theta: &CurvatureTensor<S>, h: &HermitianMetric<S>) -> Self {
        let strong = |k| einstein_residual_from(k, EinsteinMode::Strong, theta, h);
        RicciReport {
            ric1: ricci(RicciKind::First, theta, h),
            ric2: ricci(RicciKind::Second, theta, h),
            ric3: ricci(RicciKind::Third, theta, h),
            s_chern: scalar_chern(theta, h),
            s_third: scalar_third(theta, h),
            einstein: [strong(RicciKind::First), strong(RicciKind::Second), strong(RicciKind::Third)],
        }
    }

    pub fn compute(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<Self> {
        Ok(Self::new(&chern_curvature(alg, h)?.tensor, h))
    }

    pub fn ric1_form(&self) -> InvariantForm<S> {
        matrix_form(&self.ric1)
    }

    pub fn ric2_form(&self) -> InvariantForm<S> {
        matrix_form(&self.ric2)
    }
}
