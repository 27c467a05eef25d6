use crate::error::{Error, Result};
use crate::forms::{CoframeAlgebra, InvariantForm};
use crate::linalg;
use crate::scalar::Scalar;
use crate::tolerance;

use super::{chern_curvature, scalar_chern, HermitianMetric};

/// Solution of dω^{n−1} = ϑ∧ω^{n−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct LeeForm<S> {
    /// `None` when dω^{n−1} is not of the form ϑ∧ω^{n−1}.
    pub theta: Option<InvariantForm<S>>,
    /// Max coefficient of dω^{n−1} − ϑ∧ω^{n−1} at the solution.
    pub residual: f64,
    /// dω = (ϑ/(n−1))∧ω and dϑ = 0.
    pub lck: bool,
}

pub fn lee_form<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<LeeForm<S>> {
    let n = alg.dim();
    if n < 2 {
        return Err(Error::Invalid("the Lee form needs complex dimension at least 2".into()));
    }
    if h.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: h.dim() });
    }
    let omega_pow = h.omega_power(n - 1);
    let target = alg.d_unchecked(&omega_pow);
    let columns: Vec<InvariantForm<S>> = (0..2 * n)
        .map(|b| InvariantForm::monomial(n, 1 << b, S::one()).wedge_unchecked(&omega_pow))
        .collect();
    let mut rows: Vec<u32> = columns.iter().flat_map(|c| c.terms().map(|(m, _)| m.mask())).collect();
    rows.extend(target.terms().map(|(m, _)| m.mask()));
    rows.sort_unstable();
    rows.dedup();
    let a: linalg::Matrix<S> = rows.iter().map(|&m| columns.iter().map(|c| c.coefficient(m)).collect()).collect();
    let b: Vec<S> = rows.iter().map(|&m| target.coefficient(m)).collect();
    let scale = linalg::max_abs(&a).max(target.max_norm());
    let threshold = tolerance::zero_threshold(scale * alg.scale().max(1.0));
    let Some(solution) = linalg::solve_consistent(&a, &b, threshold) else {
        return Ok(LeeForm { theta: None, residual: target.max_norm(), lck: false });
    };
    let mut theta = InvariantForm::zero(n);
    for (bit, c) in solution.x.into_iter().enumerate() {
        theta.add_term(1 << bit, c);
    }
    let omega = h.omega();
    let factor = S::from_ratio(1, n as i64 - 1);
    let lck_defect = alg.d_unchecked(&omega).sub_unchecked(&theta.scale(&factor).wedge_unchecked(&omega));
    let closed = alg.d_unchecked(&theta);
    let lck = lck_defect.is_zero_within(threshold) && closed.is_zero_within(threshold);
    Ok(LeeForm { theta: Some(theta), residual: solution.residual, lck })
}

/// ∂∂̄ω^{n−1} and whether it vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct GauduchonCheck<S> {
    pub form: InvariantForm<S>,
    pub residual: f64,
    pub gauduchon: bool,
}

pub fn is_gauduchon<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<GauduchonCheck<S>> {
    let n = alg.dim();
    if h.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: h.dim() });
    }
    let power = h.omega_power(n.saturating_sub(1));
    let form = alg.del(&alg.delbar(&power));
    let threshold = tolerance::zero_threshold(power.max_norm() * alg.scale().max(1.0).powi(2));
    let residual = form.max_norm();
    let gauduchon = form.is_zero_within(threshold);
    Ok(GauduchonCheck { form, residual, gauduchon })
}

/// Gauduchon degree of an invariant Gauduchon metric: the scalar curvature
/// of the representative rescaled to unit volume coefficient, η = ω / det(h)^{1/n}.
pub fn gauduchon_degree_invariant<S: Scalar>(alg: &CoframeAlgebra<S>, h: &HermitianMetric<S>) -> Result<f64> {
    let check = is_gauduchon(alg, h)?;
    if !check.gauduchon {
        return Err(Error::NotGauduchon { residual: check.residual });
    }
    let curvature = chern_curvature(alg, h)?;
    let s = scalar_chern(&curvature.tensor, h).to_c64().re;
    let det = h.det().to_c64().re;
    Ok(s * det.powf(1.0 / alg.dim() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{entry, standard_points, Params};
    use crate::scalar::CQ;

    fn setup(name: &str, p: &Params) -> (CoframeAlgebra<CQ>, HermitianMetric<CQ>) {
        let e = entry(name).unwrap();
        (e.algebra(p), e.metric(p).unwrap())
    }

    #[test]
    fn snow_lee_form_at_u_zero() {
        let p = Params::new(CQ::from_i64(2), CQ::from_ratio(1, 3), CQ::zero()).with_ell(CQ::from_i64(3));
        let (alg, h) = setup("snow-s5", &p);
        let lee = lee_form(&alg, &h).unwrap();
        let ell = CQ::from_i64(3);
        let expected = InvariantForm::phi(2, 0).scale(&ell).add(&InvariantForm::phibar(2, 0).scale(&ell)).unwrap();
        assert_eq!(lee.theta.unwrap(), expected);
        assert!(lee.lck);
        let generic = Params::new(CQ::one(), CQ::one(), CQ::from_ratio(1, 2));
        let (alg, h) = setup("snow-s5", &generic);
        assert!(!lee_form(&alg, &h).unwrap().lck);
    }

    #[test]
    fn kahler_metric_has_zero_lee_form() {
        let (alg, h) = setup("ovando-r2r2", &Params::new(CQ::from_i64(2), CQ::one(), CQ::zero()));
        assert!(lee_form(&alg, &h).unwrap().theta.unwrap().is_empty());
    }

    #[test]
    fn ovando_r4_lee_form_rewedges() {
        for p in standard_points() {
            let (alg, h) = setup("ovando-r4", &p);
            let theta = lee_form(&alg, &h).unwrap().theta.unwrap();
            let omega = h.omega();
            assert!(!alg.d(&omega).unwrap().is_empty());
            assert_eq!(alg.d(&omega).unwrap(), theta.wedge(&omega).unwrap());
        }
    }

    #[test]
    fn float_and_exact_lee_forms_agree() {
        let p = standard_points().remove(4);
        let (alg, h) = setup("inoue-spm", &p);
        let exact = lee_form(&alg, &h).unwrap().theta.unwrap().to_c64();
        let float = lee_form(&alg.to_c64(), &h.to_c64()).unwrap().theta.unwrap();
        assert!(float.sub(&exact).unwrap().max_norm() < 1e-12);
    }

    #[test]
    fn gauduchon_checks() {
        let unit = Params::new(CQ::one(), CQ::one(), CQ::zero());
        for name in ["flat-torus", "ovando-r2r2", "hopf"] {
            let (alg, h) = setup(name, &unit);
            assert!(is_gauduchon(&alg, &h).unwrap().gauduchon, "{name}");
        }
        let (alg, h) = setup("snow-s5", &unit);
        let check = is_gauduchon(&alg, &h).unwrap();
        assert!(!check.gauduchon && check.residual > 0.0);
    }

    #[test]
    fn gauduchon_degree_signs() {
        let unit = Params::new(CQ::one(), CQ::one(), CQ::zero());
        let degree = |name: &str| {
            let (alg, h) = setup(name, &unit);
            gauduchon_degree_invariant(&alg.to_c64(), &h.to_c64())
        };
        assert_eq!(degree("flat-torus").unwrap(), 0.0);
        assert!(degree("hopf").unwrap() > 0.0);
        assert!(degree("inoue-sm").unwrap() < 0.0);
        assert!(matches!(degree("snow-s5"), Err(Error::NotGauduchon { .. })));
    }
}
