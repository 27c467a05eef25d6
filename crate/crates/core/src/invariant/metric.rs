use crate::error::{Error, Result};
use crate::forms::InvariantForm;
use crate::linalg::{self, Matrix};
use crate::scalar::{Scalar, C64, CQ};
use crate::tolerance;

/// Constant Hermitian metric h_{ij̄} on an invariant coframe, with
/// ω = √−1 h_{ij̄} φ^i∧φ̄^j.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMetric<S> {
    h: Matrix<S>,
    inv: Matrix<S>,
}

impl<S: Scalar> HermitianMetric<S> {
    /// Validates Hermitian symmetry, positive leading minors and the
    /// degeneracy floor `det h >= 1e-10 · (max |h_ij|)^n`.
    pub fn new(h: Matrix<S>) -> Result<Self> {
        let n = h.len();
        if n == 0 {
            return Err(Error::Invalid("metric must be at least 1x1".into()));
        }
        if let Some(row) = h.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { left: n, right: row.len() });
        }
        let scale = linalg::max_abs(&h);
        let threshold = tolerance::zero_threshold(scale);
        for i in 0..n {
            for j in i..n {
                if !(h[i][j].clone() - h[j][i].conj()).is_negligible(threshold) {
                    return Err(Error::NotHermitian { row: i + 1, col: j + 1 });
                }
            }
        }
        for k in 1..=n {
            let minor: Matrix<S> = h[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !linalg::determinant(&minor).re_is_positive() {
                return Err(Error::NotPositiveDefinite { order: k });
            }
        }
        let det = linalg::determinant(&h).to_c64().re;
        let floor = tolerance::DEGENERATE_DET * scale.powi(n as i32);
        if det < floor {
            return Err(Error::DegenerateMetric { det, threshold: floor });
        }
        let inv = linalg::inverse(&h).ok_or(Error::DegenerateMetric { det, threshold: floor })?;
        Ok(HermitianMetric { h, inv })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(linalg::identity(n)).expect("identity is a metric")
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    /// h_{ij̄}.
    pub fn h(&self, i: usize, j: usize) -> &S {
        &self.h[i][j]
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.h
    }

    /// h^{ab̄}, defined by h^{ab̄} h_{cb̄} = δ^a_c.
    pub fn h_inv(&self, a: usize, b: usize) -> &S {
        &self.inv[b][a]
    }

    pub fn det(&self) -> S {
        linalg::determinant(&self.h)
    }

    /// ω = √−1 h_{ij̄} φ^i∧φ̄^j.
    pub fn omega(&self) -> InvariantForm<S> {
        matrix_form(&self.h)
    }

    /// ω^k.
    pub fn omega_power(&self, k: usize) -> InvariantForm<S> {
        let omega = self.omega();
        let mut acc = InvariantForm::constant(self.dim(), S::one());
        for _ in 0..k {
            acc = acc.wedge_unchecked(&omega);
        }
        acc
    }

    /// c·h for a real constant c > 0.
    pub fn scaled(&self, c: &S) -> Result<Self> {
        Self::new(self.h.iter().map(|row| row.iter().map(|v| v.clone() * c.clone()).collect()).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> HermitianMetric<T> {
        let conv = |m: &Matrix<S>| m.iter().map(|row| row.iter().map(&f).collect()).collect();
        HermitianMetric { h: conv(&self.h), inv: conv(&self.inv) }
    }

    pub fn to_c64(&self) -> HermitianMetric<C64> {
        self.map(|v| v.to_c64())
    }
}

impl HermitianMetric<CQ> {
    pub fn to_scalar<S: Scalar>(&self) -> HermitianMetric<S> {
        self.map(S::from_cq)
    }
}

/// √−1 a_{ij̄} φ^i∧φ̄^j for a coefficient matrix `a`.
pub fn matrix_form<S: Scalar>(a: &Matrix<S>) -> InvariantForm<S> {
    let n = a.len();
    let mut out = InvariantForm::zero(n);
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out.add_term(1 << i | 1 << (n + j), S::i() * v.clone());
        }
    }
    out
}

/// Reads a (1,1)-form back into the matrix a with form = √−1 a_{ij̄} φ^i∧φ̄^j.
pub fn form_matrix<S: Scalar>(form: &InvariantForm<S>) -> Matrix<S> {
    let n = form.dim();
    (0..n).map(|i| (0..n).map(|j| -S::i() * form.coeff_11(i, j)).collect()).collect()
}

/// The two-parameter-plus-complex family of invariant metrics on surfaces:
///
/// ```text
/// ω = (√−1/2) r² φ¹∧φ̄¹ + (√−1/2) s² φ²∧φ̄² + (1/2) u φ¹∧φ̄² − (1/2) ū φ²∧φ̄¹
/// ```
///
/// i.e. h_{11̄} = r²/2, h_{22̄} = s²/2, h_{12̄} = −√−1 u/2, h_{21̄} = √−1 ū/2.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMetricParams<S> {
    pub r: S,
    pub s: S,
    pub u: S,
}

impl<S: Scalar> SurfaceMetricParams<S> {
    pub fn new(r: S, s: S, u: S) -> Self {
        SurfaceMetricParams { r, s, u }
    }

    /// r²s² − |u|².
    pub fn discriminant(&self) -> S {
        let (r2, s2) = (self.r.clone() * self.r.clone(), self.s.clone() * self.s.clone());
        r2 * s2 - self.u.clone() * self.u.conj()
    }

    pub fn check(&self) -> Result<()> {
        let real = |x: &S| (x.clone() - x.conj()).is_negligible(tolerance::ABS_ZERO);
        if !real(&self.r) || !real(&self.s) {
            return Err(Error::Inadmissible("r and s must be real".into()));
        }
        if self.r.is_negligible(0.0) || self.s.is_negligible(0.0) {
            return Err(Error::Inadmissible("r and s must be non-zero".into()));
        }
        if !self.discriminant().re_is_positive() {
            return Err(Error::Inadmissible("r²s² − |u|² must be positive".into()));
        }
        Ok(())
    }

    pub fn matrix(&self) -> Matrix<S> {
        let half = S::from_ratio(1, 2);
        vec![
            vec![self.r.clone() * self.r.clone() * half.clone(), -S::i() * self.u.clone() * half.clone()],
            vec![S::i() * self.u.conj() * half.clone(), self.s.clone() * self.s.clone() * half],
        ]
    }

    pub fn metric(&self) -> Result<HermitianMetric<S>> {
        self.check()?;
        HermitianMetric::new(self.matrix())
    }

    pub fn to_c64(&self) -> SurfaceMetricParams<C64> {
        SurfaceMetricParams::new(self.r.to_c64(), self.s.to_c64(), self.u.to_c64())
    }
}
