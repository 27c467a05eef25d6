use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::forms::InvariantForm;
use crate::scalar::{Scalar, C64};

use super::{Curvature, HermitianMetric};

/// First and second Chern forms of the Chern curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernForms {
    /// c1 = (√−1/2π) tr Θ.
    pub c1: InvariantForm<C64>,
    /// c2 = (1/8π²)(tr(Θ∧Θ) − trΘ∧trΘ).
    pub c2: InvariantForm<C64>,
}

pub fn chern_weil<S: Scalar>(curvature: &Curvature<S>) -> ChernForms {
    let forms: Vec<Vec<InvariantForm<C64>>> =
        curvature.forms.iter().map(|row| row.iter().map(InvariantForm::to_c64).collect()).collect();
    let n = forms.len();
    let mut trace = InvariantForm::zero(n);
    for (m, row) in forms.iter().enumerate() {
        trace = trace.add_unchecked(&row[m]);
    }
    let mut tr_sq = InvariantForm::zero(n);
    for a in 0..n {
        for b in 0..n {
            tr_sq = tr_sq.add_unchecked(&forms[a][b].wedge_unchecked(&forms[b][a]));
        }
    }
    let c1 = trace.scale(&C64::new(0.0, 1.0 / (2.0 * PI)));
    let c2 = tr_sq.sub_unchecked(&trace.wedge_unchecked(&trace)).scale(&C64::new(1.0 / (8.0 * PI * PI), 0.0));
    ChernForms { c1, c2 }
}

/// ((n−1)c1² − 2n c2)∧ω^{n−2} as a multiple of the volume form ω^n/n!.
pub fn bogomolov_lubke<S: Scalar>(curvature: &Curvature<S>, h: &HermitianMetric<S>) -> Result<f64> {
    let n = h.dim();
    if n < 2 {
        return Err(Error::Invalid("the Bogomolov-Lübke pairing needs complex dimension at least 2".into()));
    }
    let ChernForms { c1, c2 } = chern_weil(curvature);
    let h = h.to_c64();
    let class = c1
        .wedge_unchecked(&c1)
        .scale(&C64::new((n - 1) as f64, 0.0))
        .sub_unchecked(&c2.scale(&C64::new(2.0 * n as f64, 0.0)));
    let top = class.wedge_unchecked(&h.omega_power(n - 2));
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let volume = h.omega_power(n).scale(&C64::new(1.0 / factorial, 0.0));
    let full = (1u32 << (2 * n)) - 1;
    Ok((top.coefficient(full) / volume.coefficient(full)).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{entry, Params};
    use crate::invariant::chern_curvature;
    use crate::scalar::CQ;

    fn bl(name: &str, p: &Params) -> f64 {
        let e = entry(name).unwrap();
        let h = e.metric(p).unwrap();
        bogomolov_lubke(&chern_curvature(&e.algebra(p), &h).unwrap(), &h).unwrap()
    }

    fn unit() -> Params {
        Params::new(CQ::one(), CQ::one(), CQ::zero())
    }

    #[test]
    fn flat_torus_pairs_to_zero() {
        assert_eq!(bl("flat-torus", &unit()), 0.0);
    }

    #[test]
    fn second_chern_einstein_examples_are_non_positive() {
        for r in [1, 2, 5] {
            let r = CQ::from_i64(r);
            assert!(bl("hopf", &Params::new(r.clone(), r, CQ::zero())) <= 1e-12);
        }
        // Regression constant at (1,1,0).
        assert!(bl("ovando-r4", &unit()).abs() < 1e-12);
    }

    #[test]
    fn kahler_einstein_product_value() {
        // Product of two hyperbolic planes with h = ½Id: −1/(2π²).
        let v = bl("ovando-r2r2", &unit());
        assert!((v + 1.0 / (2.0 * PI * PI)).abs() < 1e-12, "{v}");
    }

    #[test]
    fn first_chern_form_is_real_and_closed() {
        let e = entry("inoue-sm").unwrap();
        let p = Params::new(CQ::from_i64(2), CQ::one(), CQ::from_ratio(1, 2));
        let alg = e.algebra(&p);
        let c = chern_curvature(&alg, &e.metric(&p).unwrap()).unwrap();
        let forms = chern_weil(&c);
        assert!(forms.c1.is_real(1e-14));
        assert!(alg.to_c64().d(&forms.c1).unwrap().is_zero_within(1e-14));
    }
}
