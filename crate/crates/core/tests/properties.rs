use aw_core::awcalc::{verify_identity, Rule};
use aw_core::numerics::q_pochhammer_range;
use aw_core::sympoly::{laurent_to_x, x_to_laurent};
use aw_core::{q_pochhammer, QContext, Rational, Scalar, XPoly};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn xpoly(max_degree: usize) -> impl Strategy<Value = XPoly<Rational>> {
    prop::collection::vec(rational(), 0..=max_degree + 1).prop_map(XPoly::from_coeffs)
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=11, 12i64..=13).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lift_round_trips(p in xpoly(12)) {
        let l = x_to_laurent(&p);
        prop_assert!(l.as_laurent().is_symmetric());
        prop_assert_eq!(laurent_to_x(&l), p);
    }

    #[test]
    fn lift_is_multiplicative(p in xpoly(6), r in xpoly(6)) {
        let lifted = x_to_laurent(&(&p * &r));
        let product = &x_to_laurent(&p) * &x_to_laurent(&r);
        prop_assert_eq!(lifted.as_laurent(), product.as_laurent());
    }

    #[test]
    fn lift_evaluates_like_the_polynomial(p in xpoly(10), z in 0.3f64..3.0) {
        let pf = p.map(Scalar::to_f64);
        let direct = pf.evaluate(&((z + 1.0 / z) / 2.0));
        let lifted = x_to_laurent(&pf).as_laurent().evaluate(&z);
        let scale = pf.max_abs_coeff().max(1.0) * (z.max(1.0 / z)).powi(10);
        prop_assert!((direct - lifted).abs() <= 1e-12 * scale);
    }

    #[test]
    fn pochhammer_steps_by_one_factor(a in rational(), q in unit_rational(), k in 0usize..10) {
        let next = q_pochhammer(&a, &q, k + 1);
        let step = q_pochhammer(&a, &q, k) * (Rational::one() - a.clone() * q.powi(k as i64));
        prop_assert_eq!(&next, &step);
        let split = q_pochhammer(&a, &q, 3) * q_pochhammer_range(&a, &q, 3, k + 3);
        prop_assert_eq!(split, q_pochhammer(&a, &q, k + 3));
    }

    #[test]
    fn operator_rules_hold_exactly(
        f in xpoly(6),
        g in xpoly(6),
        u in unit_rational(),
    ) {
        let ctx = QContext::from_u(u).unwrap();
        for rule in Rule::ALL {
            let residual = verify_identity(&ctx, rule, &f, Some(&g)).unwrap();
            prop_assert!(residual.is_zero(), "{} left {:?}", rule, residual);
        }
    }
}
