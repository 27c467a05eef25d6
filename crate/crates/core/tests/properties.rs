use chern_core::catalog::{self, Computation, Family, Params};
use chern_core::invariant::{ricci_form, trace_with, EinsteinMode, RicciKind};
use chern_core::scalar::{cq, Scalar, C64, CQ};
use proptest::prelude::*;

/// Admissible rational (r, s, u) with |u| < rs.
fn params() -> impl Strategy<Value = Params> {
    (1i64..=8, 1i64..=8, 1i64..=4, -6i64..=6, -6i64..=6, 1i64..=4).prop_filter_map(
        "inadmissible",
        |(rn, sn, den, ure, uim, ell)| {
            let r = CQ::from_ratio(rn, den);
            let s = CQ::from_ratio(sn, 2);
            let u = cq((ure, 4), (uim, 4));
            let disc = r.clone() * r.clone() * s.clone() * s.clone() - u.clone() * u.conj();
            disc.re_is_positive().then(|| Params::new(r, s, u).with_ell(CQ::from_ratio(ell, 2)))
        },
    )
}

fn surface_entry() -> impl Strategy<Value = &'static str> {
    let names: Vec<&'static str> =
        catalog::entries().iter().filter(|e| e.family == Family::Surface).map(|e| e.name).collect();
    proptest::sample::select(names)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_identities_hold(name in surface_entry(), p in params()) {
        let entry = catalog::entry(name).unwrap();
        let c = Computation::<CQ>::new(entry, &p).unwrap();
        let rep = &c.report;
        prop_assert_eq!(trace_with(&rep.ric1, &c.metric), rep.s_chern.clone());
        prop_assert_eq!(trace_with(&rep.ric2, &c.metric), rep.s_chern.clone());
        prop_assert_eq!(trace_with(&rep.ric3, &c.metric), rep.s_third.clone());
        prop_assert_eq!(c.tensor.pair_symmetry_defect(), 0.0);
        prop_assert!(c.algebra.d(&ricci_form(RicciKind::First, &c.tensor, &c.metric)).unwrap().is_empty());
        for m in [&rep.ric1, &rep.ric2] {
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert_eq!(m[i][j].clone(), m[j][i].conj());
                }
            }
        }
    }

    #[test]
    fn float_backend_tracks_exact(name in surface_entry(), p in params()) {
        let entry = catalog::entry(name).unwrap();
        let exact = Computation::<CQ>::new(entry, &p).unwrap();
        let float = Computation::<C64>::new(entry, &p).unwrap();
        let exact_f = exact.tensor.map(Scalar::to_c64);
        prop_assert!(float.tensor.relative_distance(&exact_f) < 1e-10);
        let scale = exact.report.s_chern.norm().max(1.0);
        prop_assert!((float.report.s_chern - exact.report.s_chern.to_c64()).norm() < 1e-10 * scale);
    }

    #[test]
    fn weak_residual_never_exceeds_strong(name in surface_entry(), p in params(), k in 1u8..=3) {
        let entry = catalog::entry(name).unwrap();
        let c = Computation::<C64>::new(entry, &p).unwrap();
        let kind = RicciKind::from_number(k).unwrap();
        let strong = chern_core::invariant::einstein_residual_from(kind, EinsteinMode::Strong, &c.tensor, &c.metric);
        let weak = chern_core::invariant::einstein_residual_from(kind, EinsteinMode::Weak, &c.tensor, &c.metric);
        prop_assert!(weak.residual <= 2f64.sqrt() * strong.residual + 1e-12);
    }
}
