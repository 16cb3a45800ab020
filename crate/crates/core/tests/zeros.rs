use aw_core::families::{aw_monic, extract_recurrence};
use aw_core::structure::{dde_data, pi_factored};
use aw_core::zeros::{extreme_zero_bounds, g2_poly, g2_roots, zeros_sturm, zeros_tridiagonal};
use aw_core::{AWParams, QContext, Rational, Scalar, XPoly};

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn param_sets() -> Vec<AWParams<Rational>> {
    vec![
        AWParams::new(
            r(6, 7),
            r(5, 7),
            r(4, 7),
            r(3, 7),
            QContext::from_q(r(1, 9)).unwrap(),
        )
        .unwrap(),
        AWParams::new(
            r(1, 2),
            r(1, 3),
            r(1, 5),
            r(1, 7),
            QContext::from_u(r(1, 2)).unwrap(),
        )
        .unwrap(),
        AWParams::new(
            r(9, 10),
            r(-1, 4),
            r(2, 3),
            r(1, 6),
            QContext::from_u(r(4, 5)).unwrap(),
        )
        .unwrap(),
    ]
}

// G_{2,n} is the quotient of
//   pi / (16 abcd) P_{n-2}(x; qa, qb, qc, qd) - kappa psi P_{n+1}
// by P_n, with
//   kappa = (1 - q)(abcd q^{2n} - q) / (4 a sqrt(q) (q^n - q)(q^n - 1) bcd),
// and the division leaves no remainder.
fn g2_by_division(p: &AWParams<Rational>, n: usize) -> XPoly<Rational> {
    let ctx = p.ctx();
    let q = ctx.q().clone();
    let one = Rational::one();
    let [a, b, c, d] = p.values();
    let qn = q.powi(n as i64);
    let kappa = (one.clone() - q.clone()) * (p.abcd() * q.powi(2 * n as i64) - q.clone())
        / (Rational::from_i64(4)
            * a
            * ctx.sqrt_q().clone()
            * (qn.clone() - q.clone())
            * (qn - one)
            * b
            * c
            * d);
    let shifted = aw_monic(&p.scaled([&q, &q, &q, &q]).unwrap(), n - 2).unwrap();
    let first = (&pi_factored(p) * &shifted).scale(&(Rational::from_i64(16) * p.abcd()).recip());
    let second = (&dde_data(p).psi * &aw_monic(p, n + 1).unwrap()).scale(&kappa);
    let (quo, rem) = (&first - &second).div_rem(&aw_monic(p, n).unwrap());
    assert!(rem.is_zero(), "division left a remainder at n = {}", n);
    quo
}

#[test]
fn quadratic_matches_polynomial_division() {
    for p in param_sets() {
        for n in 3..=8 {
            assert_eq!(g2_by_division(&p, n), g2_poly(&p, n).unwrap(), "n = {}", n);
        }
    }
}

#[test]
fn sturm_and_eigen_routes_agree() {
    for p in param_sets().into_iter().filter(|p| p.is_admissible()) {
        let rec = extract_recurrence(&p, 10).unwrap().map(Scalar::to_f64);
        for n in 1..=10 {
            let sturm = zeros_sturm(&rec, n, &1e-14).unwrap();
            let eigen = zeros_tridiagonal(&rec, n).unwrap();
            assert!(sturm.is_well_formed() && eigen.is_well_formed());
            assert!(sturm.max_distance(&eigen).unwrap() < 1e-10, "n = {}", n);
        }
    }
}

#[test]
fn bounds_sit_inside_the_extreme_zeros() {
    for p in param_sets().into_iter().filter(|p| p.is_admissible()) {
        let rec = extract_recurrence(&p, 10).unwrap().map(Scalar::to_f64);
        let [a, b, c, d] = p.values().map(|v| Scalar::to_f64(&v));
        let ctx = QContext::from_sqrt_q(Scalar::to_f64(p.ctx().sqrt_q())).unwrap();
        let pf = AWParams::new(a, b, c, d, ctx).unwrap();
        let mut lower = None;
        for n in 2..=10 {
            let z = zeros_sturm(&rec, n, &1e-14).unwrap();
            assert!(z.inside_unit_interval());
            if let Some(l) = &lower {
                assert!(z.interlaces(l));
            }
            let b = extreme_zero_bounds(&pf, n).unwrap();
            let (lo, hi) = (*z.smallest().unwrap(), *z.largest().unwrap());
            if n == 2 {
                // the bounds are sharp for the quadratic
                assert!((lo - b.upper_on_smallest).abs() < 1e-12);
                assert!((hi - b.lower_on_largest).abs() < 1e-12);
            } else {
                assert!(lo < b.upper_on_smallest, "n = {}", n);
                assert!(hi > b.lower_on_largest, "n = {}", n);
            }
            if n >= 3 {
                let (lo, hi) = g2_roots(&pf, n - 1).unwrap();
                assert!((lo - b.upper_on_smallest).abs() <= 1e-8 * lo.abs().max(1e-3));
                assert!((hi - b.lower_on_largest).abs() <= 1e-8 * hi.abs().max(1e-3));
            }
            lower = Some(z);
        }
    }
}

// The random-draw checks extract at 1024 bits. At the small-q corner the
// series cancels most, so compare against twice the width there.
#[test]
fn wide_float_extraction_is_stable_at_small_q() {
    fn coeffs<const B: usize>(v: [f64; 4], q: f64) -> Vec<f64> {
        let ctx = QContext::from_q(aw_core::BigFloat::<B>::from_f64(q)).unwrap();
        let [a, b, c, d] = v.map(aw_core::BigFloat::<B>::from_f64);
        let rec = extract_recurrence(&AWParams::new(a, b, c, d, ctx).unwrap(), 20).unwrap();
        rec.a.iter().chain(&rec.b).map(Scalar::to_f64).collect()
    }
    for v in [
        [0.98, 0.97, 0.02, 0.5],
        [0.02, 0.03, 0.98, 0.97],
        [0.98, 0.98, 0.98, 0.98],
    ] {
        let narrow = coeffs::<1024>(v, 0.05);
        let wide = coeffs::<2048>(v, 0.05);
        for (x, y) in narrow.iter().zip(&wide) {
            assert!((x - y).abs() <= 1e-13 * y.abs(), "{:?}: {} vs {}", v, x, y);
        }
    }
}
