use crate::error::{Error, Result};
use crate::forms::{CoframeAlgebra, InvariantForm};
use crate::scalar::Scalar;
use crate::tolerance;

use super::HermitianMetric;

/// Chern connection 1-forms θ^i_j of an invariant metric.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionForms<S> {
    pub theta: Vec<Vec<InvariantForm<S>>>,
}

impl<S: Scalar> ConnectionForms<S> {
    pub fn get(&self, i: usize, j: usize) -> &InvariantForm<S> {
        &self.theta[i][j]
    }
}

/// Chern curvature tensor Θ_{ij̄kl̄}.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> CurvatureTensor<S> {
    pub fn zeros(n: usize) -> Self {
        CurvatureTensor { n, data: vec![S::zero(); n.pow(4)] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> S) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        *t.get_mut(i, j, k, l) = f(i, j, k, l);
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    /// Θ_{ij̄kl̄}.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.data[self.index(i, j, k, l)]
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize, l: usize) -> &mut S {
        let idx = self.index(i, j, k, l);
        &mut self.data[idx]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::norm).fold(0.0, f64::max)
    }

    /// Largest |Θ_{ij̄kl̄} − conj(Θ_{jīlk̄})|.
    pub fn pair_symmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let d = self.get(i, j, k, l).clone() - self.get(j, i, l, k).conj();
                        worst = worst.max(d.norm());
                    }
                }
            }
        }
        worst
    }

    /// Largest componentwise difference relative to the larger tensor norm.
    pub fn relative_distance<T: Scalar>(&self, other: &CurvatureTensor<T>) -> f64 {
        let scale = self.max_abs().max(other.max_abs());
        let diff = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CurvatureTensor<T> {
        CurvatureTensor { n: self.n, data: self.data.iter().map(f).collect() }
    }
}

/// Curvature 2-forms Θ^m_k together with the lowered tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature<S> {
    pub connection: ConnectionForms<S>,
    pub forms: Vec<Vec<InvariantForm<S>>>,
    pub tensor: CurvatureTensor<S>,
}

fn check_inputs<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<()> {
    if alg.dim() != h.dim() {
        return Err(Error::DimensionMismatch { left: alg.dim(), right: h.dim() });
    }
    alg.check_integrable()?;
    let jacobi = alg.check_jacobi();
    if !jacobi.pass {
        return Err(Error::JacobiFailure { residual: jacobi.residual });
    }
    Ok(())
}

/// The Chern connection: (0,1)-part θ''^i_j = B^i_{jk̄} φ̄^k, (1,0)-part from
/// θ'^k_i h_{kj̄} = −h_{ik̄} conj(θ''^k_j).
pub fn chern_connection<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<ConnectionForms<S>> {
    check_inputs(alg, h)?;
    Ok(connection_unchecked(alg, h))
}

fn connection_unchecked<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> ConnectionForms<S> {
    let n = alg.dim();
    let theta01: Vec<Vec<InvariantForm<S>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut f = InvariantForm::zero(n);
                    for k in 0..n {
                        f.add_term(1 << (n + k), alg.b(i, j, k));
                    }
                    f
                })
                .collect()
        })
        .collect();
    // rhs[i][j] = −h_{ik̄} conj(θ''^k_j), a (1,0)-form
    let rhs: Vec<Vec<InvariantForm<S>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = InvariantForm::zero(n);
                    for k in 0..n {
                        acc = acc.sub_unchecked(&theta01[k][j].conj().scale(h.h(i, k)));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // θ'^k_i = rhs[i][j] h^{kj̄}
    let theta = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    let mut acc = theta01[k][i].clone();
                    for j in 0..n {
                        acc = acc.add_unchecked(&rhs[i][j].scale(h.h_inv(k, j)));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    ConnectionForms { theta }
}

/// Θ^m_k = dθ^m_k + θ^m_l∧θ^l_k, checked to be of type (1,1), expanded as
/// R^m_{k,ij̄} φ^i∧φ̄^j and lowered to Θ_{ij̄kl̄} = h_{ml̄} R^m_{k,ij̄}.
pub fn chern_curvature<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<Curvature<S>> {
    check_inputs(alg, h)?;
    let n = alg.dim();
    let connection = connection_unchecked(alg, h);
    let th = &connection.theta;
    let mut forms = vec![vec![InvariantForm::zero(n); n]; n];
    let mut scale = 0.0f64;
    for m in 0..n {
        for k in 0..n {
            let mut acc = alg.d_unchecked(&th[m][k]);
            for l in 0..n {
                acc = acc.add_unchecked(&th[m][l].wedge_unchecked(&th[l][k]));
            }
            scale = scale.max(acc.max_norm());
            forms[m][k] = acc;
        }
    }
    let threshold = tolerance::zero_threshold(scale.max(alg.scale().powi(2)));
    for (m, row) in forms.iter().enumerate() {
        for (k, form) in row.iter().enumerate() {
            let off = form.project_bidegree(2, 0).add_unchecked(&form.project_bidegree(0, 2));
            if !off.is_zero_within(threshold) {
                return Err(Error::CurvatureNotType11 { row: m + 1, col: k + 1, residual: off.max_norm() });
            }
        }
    }
    let tensor = CurvatureTensor::from_fn(n, |i, j, k, l| {
        let mut acc = S::zero();
        for (m, row) in forms.iter().enumerate() {
            acc = acc + h.h(m, l).clone() * row[k].coeff_11(i, j);
        }
        acc
    });
    Ok(Curvature { connection, forms, tensor })
}

/// Torsion τ^i = dφ^i + θ^i_j∧φ^j and its trace 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct Torsion<S> {
    pub tau: Vec<InvariantForm<S>>,
    /// Σ_j T^k_{jk} φ^j, where τ^i = ½ T^i_{jk} φ^j∧φ^k.
    pub trace: InvariantForm<S>,
}

impl<S: Scalar> Torsion<S> {
    pub fn is_zero(&self, threshold: f64) -> bool {
        self.tau.iter().all(|t| t.is_zero_within(threshold))
    }
}

pub fn torsion<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<Torsion<S>> {
    let connection = chern_connection(alg, h)?;
    let n = alg.dim();
    let mut tau = Vec::with_capacity(n);
    for i in 0..n {
        let mut t = alg.d_phi(i).clone();
        for j in 0..n {
            t = t.add_unchecked(&connection.theta[i][j].wedge_unchecked(&InvariantForm::phi(n, j)));
        }
        tau.push(t);
    }
    let threshold = tolerance::zero_threshold(alg.scale());
    let stray = tau.iter().map(|t| t.sub_unchecked(&t.project_bidegree(2, 0)).max_norm()).fold(0.0, f64::max);
    if !S::EXACT && stray > threshold || S::EXACT && stray > 0.0 {
        return Err(Error::TorsionNotType20 { residual: stray });
    }
    // T^k_{jk} = coefficient of φ^j∧φ^k in τ^k, with the antisymmetric sign for j > k.
    let mut trace = InvariantForm::zero(n);
    for j in 0..n {
        for (k, t) in tau.iter().enumerate() {
            if j == k {
                continue;
            }
            let c = t.coefficient(1 << j | 1 << k);
            trace.add_term(1 << j, if j < k { c } else { -c });
        }
    }
    Ok(Torsion { tau, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{entry, standard_points, Params};
    use crate::invariant::SurfaceMetricParams;
    use crate::scalar::{cq, CQ};

    fn hopf(r: CQ) -> (CoframeAlgebra<CQ>, HermitianMetric<CQ>) {
        let e = entry("hopf").unwrap();
        let p = Params::new(r.clone(), r, CQ::zero());
        (e.algebra(&p), e.metric(&p).unwrap())
    }

    fn i() -> CQ {
        CQ::i()
    }

    #[test]
    fn hopf_connection_by_hand() {
        let (alg, h) = hopf(CQ::from_ratio(3, 2));
        let c = chern_connection(&alg, &h).unwrap();
        let expected11 = InvariantForm::phi(2, 1).scale(&i()).add(&InvariantForm::phibar(2, 1).scale(&i())).unwrap();
        assert_eq!(c.get(0, 0), &expected11);
        assert_eq!(c.get(0, 1), &InvariantForm::phi(2, 0).scale(&-i()));
        assert_eq!(c.get(1, 0), &InvariantForm::phibar(2, 0).scale(&-i()));
        assert!(c.get(1, 1).is_empty());
    }

    #[test]
    fn abelian_connection_and_curvature_vanish() {
        let alg = CoframeAlgebra::<CQ>::abelian(2);
        let h = SurfaceMetricParams::new(CQ::one(), CQ::one(), cq((3, 10), (0, 1))).metric().unwrap();
        assert!(chern_connection(&alg, &h).unwrap().theta.iter().flatten().all(InvariantForm::is_empty));
        assert_eq!(chern_curvature(&alg, &h).unwrap().tensor.max_abs(), 0.0);
    }

    #[test]
    fn hopf_curvature_components() {
        for r in [CQ::one(), CQ::from_i64(2), CQ::from_ratio(1, 3)] {
            let (alg, h) = hopf(r.clone());
            let t = chern_curvature(&alg, &h).unwrap().tensor;
            let half_r2 = r.clone() * r * CQ::from_ratio(1, 2);
            assert_eq!(t.get(0, 0, 0, 0), &half_r2);
            assert_eq!(t.get(0, 0, 1, 1), &half_r2);
            for (i, j, k, l) in (0..16).map(|m| (m >> 3, (m >> 2) & 1, (m >> 1) & 1, m & 1)) {
                if (i, j) != (0, 0) {
                    assert!(t.get(i, j, k, l).is_exact_zero(), "{i}{j}{k}{l}");
                }
            }
        }
    }

    #[test]
    fn torsion_is_type_20_on_every_entry() {
        for e in crate::catalog::entries() {
            let p = e.default_params().remove(1);
            let t = torsion(&e.algebra(&p), &e.metric(&p).unwrap()).unwrap();
            assert!(t.tau.iter().all(|f| f.sub(&f.project_bidegree(2, 0)).unwrap().is_empty()), "{}", e.name);
        }
    }

    #[test]
    fn hopf_torsion() {
        let (alg, h) = hopf(CQ::one());
        let t = torsion(&alg, &h).unwrap();
        assert_eq!(t.tau[0], InvariantForm::from_product(2, &[0, 1], -i()));
        assert!(t.tau[1].is_empty());
        assert_eq!(t.trace, InvariantForm::phi(2, 1).scale(&i()));
    }

    #[test]
    fn flat_torus_is_torsion_free() {
        let alg = CoframeAlgebra::<CQ>::abelian(2);
        let p = standard_points().remove(2);
        assert!(torsion(&alg, &p.surface().metric().unwrap()).unwrap().is_zero(0.0));
    }

    #[test]
    fn curvature_tensor_has_pair_symmetry() {
        for e in crate::catalog::entries() {
            for p in e.default_params() {
                let c = chern_curvature(&e.algebra(&p), &e.metric(&p).unwrap()).unwrap();
                assert_eq!(c.tensor.pair_symmetry_defect(), 0.0, "{}", e.name);
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let alg = CoframeAlgebra::<CQ>::abelian(3);
        let h = HermitianMetric::<CQ>::identity(2);
        assert!(matches!(chern_curvature(&alg, &h), Err(Error::DimensionMismatch { .. })));
    }
}
