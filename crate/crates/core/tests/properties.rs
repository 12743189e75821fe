mod common;

use kappamu::contact::{h_eigenstructure, is_sasakian, ContactMetricStructure};
use kappamu::curvature::{covariant_derivative, Geometry};
use kappamu::frame::{family_frame, LieFrame, MetricFrame};
use kappamu::kappa_mu::{detect_kappa_mu, verify_ricci_identities};
use kappamu::pseudosym::{classify_symmetry, curvature_action, q_tensor, Fit};
use kappamu::report::analysis::{run_analysis, AnalysisOptions};
use kappamu::report::presets::family_spec;
use kappamu::report::spec::parse_spec;
use kappamu::scalar::Rational;
use kappamu::tensor::{basis, vec_add, vec_scale, vec_sub, Tensor};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(p, q)| Rational::frac(p, q))
}

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn frame() -> impl Strategy<Value = LieFrame> {
    prop_oneof![
        prop::array::uniform6(small()).prop_map(common::unimodular),
        prop::array::uniform4(small()).prop_map(common::semidirect),
    ]
}

fn metric_frame() -> impl Strategy<Value = MetricFrame> {
    (frame(), prop::array::uniform6(small()))
        .prop_map(|(f, l)| MetricFrame::new(f, common::metric(l)).expect("positive definite"))
}

fn family_member() -> impl Strategy<Value = (Rational, Rational)> {
    (rational(), rational())
}

fn structure(c2: &Rational, c3: &Rational) -> (ContactMetricStructure, Geometry) {
    let m = MetricFrame::orthonormal(family_frame(Rational::int(2), c2.clone(), c3.clone()));
    (ContactMetricStructure::build(m.clone(), 0).unwrap(), Geometry::compute(m))
}

fn swap_trailing(t: &Tensor) -> Tensor {
    let order = t.order();
    Tensor::from_fn(t.dim(), t.arity().0, t.arity().1, |ix| {
        let mut j = ix.to_vec();
        j.swap(order - 1, order - 2);
        t.get(&j).clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn connection_is_metric_and_torsion_free(m in metric_frame()) {
        let geo = Geometry::compute(m.clone());
        for i in 0..3 {
            let x = basis(3, i);
            for j in 0..3 {
                let y = basis(3, j);
                let torsion = vec_sub(
                    &vec_sub(&covariant_derivative(&geo.gamma, &x, &y), &covariant_derivative(&geo.gamma, &y, &x)),
                    &m.lie_bracket(&x, &y).unwrap(),
                );
                prop_assert!(torsion.iter().all(Rational::is_zero));
                for k in 0..3 {
                    let z = basis(3, k);
                    let compat = m.inner(&covariant_derivative(&geo.gamma, &x, &y), &z)
                        + m.inner(&y, &covariant_derivative(&geo.gamma, &x, &z));
                    prop_assert!(compat.is_zero());
                }
            }
        }
    }

    #[test]
    fn curvature_symmetries(m in metric_frame()) {
        let geo = Geometry::compute(m);
        let r = &geo.riemann;
        let r04 = &geo.riemann_lowered;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let b = r.get(&[l, k, i, j]) + r.get(&[l, i, j, k]) + r.get(&[l, j, k, i]);
                        prop_assert!(b.is_zero());
                        let v = r04.get(&[i, j, k, l]);
                        prop_assert_eq!(v, &-r04.get(&[j, i, k, l]));
                        prop_assert_eq!(v, &-r04.get(&[i, j, l, k]));
                        prop_assert_eq!(v, r04.get(&[k, l, i, j]));
                    }
                }
            }
        }
    }

    #[test]
    fn derivations_are_antisymmetric_in_trailing_pair(m in metric_frame()) {
        let geo = Geometry::compute(m.clone());
        let r04 = &geo.riemann_lowered;
        let rr = curvature_action(&geo.riemann, r04).unwrap();
        prop_assert_eq!(swap_trailing(&rr), rr.scale(&-Rational::one()));
        for b in [&geo.ricci, &m.metric_tensor()] {
            let q = q_tensor(b, r04).unwrap();
            prop_assert_eq!(swap_trailing(&q), q.scale(&-Rational::one()));
        }
    }

    #[test]
    fn proportional_fits_are_exact(m in metric_frame()) {
        let geo = Geometry::compute(m.clone());
        let sym = classify_symmetry(&m, &geo.riemann, &geo.ricci);
        let r04 = &geo.riemann_lowered;
        let rr = curvature_action(&geo.riemann, r04).unwrap();
        for (fit, b) in [(&sym.pseudosymmetry_fit, m.metric_tensor()), (&sym.rgps_fit, geo.ricci.clone())] {
            if let Fit::Proportional(l) = fit {
                let q = q_tensor(&b, r04).unwrap();
                prop_assert!(rr.checked_sub(&q.scale(l)).unwrap().is_zero());
            }
        }
    }

    /// Every Riemannian 3-manifold satisfies `R·R = Q(S,R)`.
    #[test]
    fn three_dimensional_rgps_with_unit_constant(m in metric_frame()) {
        let geo = Geometry::compute(m.clone());
        let fit = classify_symmetry(&m, &geo.riemann, &geo.ricci).rgps_fit;
        prop_assert!(fit == Fit::Proportional(Rational::one()) || fit == Fit::BothZero, "{:?}", fit);
    }

    #[test]
    fn constant_curvature_is_semisymmetric(c in rational().prop_filter("nonzero", |c| !c.is_zero())) {
        let m = MetricFrame::orthonormal(family_frame(c.clone(), c.clone(), c));
        let geo = Geometry::compute(m.clone());
        prop_assert!(classify_symmetry(&m, &geo.riemann, &geo.ricci).semisymmetric);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contact_axioms_on_family((c2, c3) in family_member()) {
        let (s, geo) = structure(&c2, &c3);
        let m = s.metric();
        let phi = s.phi();
        prop_assert!(phi.apply(s.xi()).iter().all(Rational::is_zero));
        for i in 0..3 {
            let x = basis(3, i);
            prop_assert!(s.eta_of(&phi.apply(&x)).is_zero());
            for j in 0..3 {
                let y = basis(3, j);
                let lhs = m.inner(&phi.apply(&x), &phi.apply(&y));
                prop_assert_eq!(lhs, m.inner(&x, &y) - s.eta_of(&x) * s.eta_of(&y));
            }
        }
        if is_sasakian(&s, &geo.gamma) {
            for i in 0..3 {
                let x = basis(3, i);
                let d = vec_add(&covariant_derivative(&geo.gamma, &x, s.xi()), &phi.apply(&x));
                prop_assert!(d.iter().all(Rational::is_zero));
            }
        }
    }

    #[test]
    fn family_identities_vanish((c2, c3) in family_member()) {
        let (s, geo) = structure(&c2, &c3);
        let p = detect_kappa_mu(&s, &geo.riemann).unwrap();
        prop_assert_eq!(&p.lambda_squared, &(Rational::one() - &p.kappa));
        for res in verify_ricci_identities(&s, &geo.riemann, &geo.ricci, &p) {
            prop_assert!(res.is_zero(), "{}", res.identity);
        }
        let ed = h_eigenstructure(&s).unwrap();
        let all: Vec<_> = ed.basis_zero.iter().chain(&ed.basis_plus).chain(&ed.basis_minus).cloned().collect();
        for (a, x) in all.iter().enumerate() {
            for y in &all[a + 1..] {
                prop_assert!(s.metric().inner(x, y).is_zero());
            }
        }
        for x in &ed.basis_plus {
            prop_assert_eq!(s.h().apply(x), vec_scale(x, &ed.lambda));
        }
        for x in &ed.basis_minus {
            prop_assert_eq!(s.h().apply(x), vec_scale(x, &-&ed.lambda));
        }
    }

    #[test]
    fn spec_round_trip_and_report_determinism((c2, c3) in family_member()) {
        let spec = family_spec("prop", c2, c3);
        let parsed = parse_spec(&spec.to_json()).unwrap();
        prop_assert_eq!(&parsed, &spec);
        let a = run_analysis(&parsed, &AnalysisOptions::default()).unwrap().to_json();
        let b = run_analysis(&spec, &AnalysisOptions::default()).unwrap().to_json();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rendered_rationals_reparse(c in rational(), d in rational()) {
        let v = &c * &d + c;
        prop_assert_eq!(v.to_string().parse::<Rational>().unwrap(), v);
    }
}
