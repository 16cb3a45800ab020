//! Askey-Wilson polynomials from the terminating series, their monic
//! normalization, recurrence extraction and the limit families.

mod limits;
mod recurrence;

use alloc::vec::Vec;

pub use limits::{
    cdqhahn_limit_target, limit_family_eval, scaled_limit_poly, LimitEstimate, LimitFamily,
};
pub use recurrence::{
    cdqhahn_coeffs, cdqhahn_poly, extract_recurrence, Provenance, RecurrenceCoeffs,
};

use crate::error::AwError;
use crate::numerics::{q_pochhammer, QContext, Scalar};
use crate::sympoly::XPoly;

/// The parameters `(a, b, c, d)` and the base of one Askey-Wilson family.
#[derive(Clone, Debug, PartialEq)]
pub struct AWParams<S> {
    a: S,
    b: S,
    c: S,
    d: S,
    ctx: QContext<S>,
    admissible: bool,
}

impl<S: Scalar> AWParams<S> {
    /// `a` must be nonzero since the series carries `a^{-n}`. Parameters
    /// outside `(0, 1)` or a base outside `(0, 1)` are accepted but clear the
    /// admissibility flag, which turns off the positivity checks.
    pub fn new(a: S, b: S, c: S, d: S, ctx: QContext<S>) -> Result<Self, AwError> {
        if a.is_zero() {
            return Err(AwError::usage("parameter a must be nonzero"));
        }
        let unit = |v: &S| v.is_positive() && *v < S::one();
        let admissible = [&a, &b, &c, &d].into_iter().all(unit) && ctx.q_in_unit_interval();
        Ok(AWParams {
            a,
            b,
            c,
            d,
            ctx,
            admissible,
        })
    }

    pub fn a(&self) -> &S {
        &self.a
    }
    pub fn b(&self) -> &S {
        &self.b
    }
    pub fn c(&self) -> &S {
        &self.c
    }
    pub fn d(&self) -> &S {
        &self.d
    }
    pub fn ctx(&self) -> &QContext<S> {
        &self.ctx
    }

    /// `[a, b, c, d]`.
    pub fn values(&self) -> [S; 4] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    pub fn abcd(&self) -> S {
        self.a.clone() * self.b.clone() * self.c.clone() * self.d.clone()
    }

    /// True when `0 < a, b, c, d < 1` and `0 < q < 1`.
    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    /// Same base, new parameters.
    pub fn with_values(&self, a: S, b: S, c: S, d: S) -> Result<Self, AwError> {
        Self::new(a, b, c, d, self.ctx.clone())
    }

    /// Multiplies the parameters slot-wise.
    pub fn scaled(&self, factors: [&S; 4]) -> Result<Self, AwError> {
        let [a, b, c, d] = self.values();
        self.with_values(
            a * factors[0].clone(),
            b * factors[1].clone(),
            c * factors[2].clone(),
            d * factors[3].clone(),
        )
    }

    /// All four parameters times `q^{1/2}`.
    pub fn half_shifted(&self) -> Result<Self, AwError> {
        let s = self.ctx.sqrt_q().clone();
        self.scaled([&s, &s, &s, &s])
    }

    /// Reorders the parameters: slot `i` of the result is slot `order[i]` of `self`.
    pub fn permuted(&self, order: [usize; 4]) -> Result<Self, AwError> {
        let v = self.values();
        if order.iter().any(|&i| i > 3) {
            return Err(AwError::usage("parameter permutation index out of range"));
        }
        self.with_values(
            v[order[0]].clone(),
            v[order[1]].clone(),
            v[order[2]].clone(),
            v[order[3]].clone(),
        )
    }

    /// `2^n (abcd q^{n-1}; q)_n`, the leading coefficient of `p_n`.
    pub fn normalization(&self, n: usize) -> Result<S, AwError> {
        let q = self.ctx.q();
        let base = self.abcd() * q.powi(n as i64 - 1);
        let norm = S::two().powi(n as i64) * q_pochhammer(&base, q, n);
        if norm.is_zero() {
            return Err(AwError::DegenerateNormalization { n });
        }
        Ok(norm)
    }
}

/// `p_n(x; a, b, c, d | q)` from the terminating series in cleared form:
///
/// ```text
/// p_n = a^{-n} sum_k (q^{-n}, abcd q^{n-1}; q)_k q^k / (q; q)_k
///       * prod_{e in {ab, ac, ad}} prod_{j=k}^{n-1} (1 - e q^j)
///       * prod_{j<k} (1 - 2a q^j x + a^2 q^{2j})
/// ```
///
/// No division by `(ab; q)_k` happens, so vanishing parameter products are fine.
pub fn aw_series_poly<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<XPoly<S>, AwError> {
    params.normalization(n)?;
    let q = params.ctx().q().clone();
    let a = params.a().clone();
    let pairs = [
        a.clone() * params.b().clone(),
        a.clone() * params.c().clone(),
        a.clone() * params.d().clone(),
    ];
    let top = params.abcd() * q.powi(n as i64 - 1);

    // tail[k] = prod_e prod_{j=k}^{n-1} (1 - e q^j)
    let mut tail = alloc::vec![S::one(); n + 1];
    for k in (0..n).rev() {
        let qk = q.powi(k as i64);
        let mut f = tail[k + 1].clone();
        for e in &pairs {
            f *= S::one() - e.clone() * qk.clone();
        }
        tail[k] = f;
    }

    let two_a = S::two() * a.clone();
    let a2 = a.clone() * a.clone();
    let mut sum = XPoly::zero();
    let mut coef = S::one();
    let mut basis = XPoly::one();
    let mut qj = S::one();
    for (k, t) in tail.iter().enumerate() {
        if k > 0 {
            let j = (k - 1) as i64;
            coef = coef
                * (S::one() - q.powi(j - n as i64))
                * (S::one() - top.clone() * q.powi(j))
                * q.clone()
                / (S::one() - q.powi(j + 1));
            let factor = XPoly::from_coeffs(alloc::vec![
                S::one() + a2.clone() * qj.clone() * qj.clone(),
                -(two_a.clone() * qj.clone()),
            ]);
            basis = &basis * &factor;
            qj *= q.clone();
        }
        if coef.is_zero() {
            break;
        }
        sum = &sum + &basis.scale(&(coef.clone() * t.clone()));
    }
    Ok(sum.scale(&a.powi(-(n as i64))))
}

/// The monic `P_n = p_n / (2^n (abcd q^{n-1}; q)_n)`.
pub fn aw_monic<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<XPoly<S>, AwError> {
    let norm = params.normalization(n)?;
    Ok(aw_series_poly(params, n)?.scale(&norm.recip()))
}

/// `P_0, ..., P_{n_max}`.
pub fn aw_family<S: Scalar>(params: &AWParams<S>, n_max: usize) -> Result<Vec<XPoly<S>>, AwError> {
    (0..=n_max).map(|n| aw_monic(params, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn params() -> AWParams<Rational> {
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        AWParams::new(r(1, 2), r(1, 3), r(1, 5), r(1, 7), ctx).unwrap()
    }

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(aw_series_poly(&params(), 0).unwrap(), XPoly::one());
        assert_eq!(aw_monic(&params(), 0).unwrap(), XPoly::one());
    }

    #[test]
    fn leading_coefficient_is_the_normalization() {
        let p = params();
        for n in 0..=6 {
            let poly = aw_series_poly(&p, n).unwrap();
            assert_eq!(poly.degree(), Some(n));
            assert_eq!(poly.leading().unwrap(), &p.normalization(n).unwrap());
            assert!(aw_monic(&p, n).unwrap().is_monic());
        }
    }

    #[test]
    fn degree_one_matches_contiguous_coefficient() {
        let p = params();
        let [a, b, c, d] = p.values();
        let one = Rational::one();
        let k0 = -((one.clone() - a.clone() * b.clone())
            * (one.clone() - a.clone() * c.clone())
            * (one.clone() - a.clone() * d.clone()))
            / (Rational::two() * a.clone() * (one.clone() - p.abcd()));
        let a0 = (a.clone() + a.recip()).half() + k0;
        assert_eq!(aw_monic(&p, 1).unwrap(), XPoly::linear(one, -a0));
    }

    #[test]
    fn symmetric_in_parameters() {
        let p = params();
        for order in [[1, 0, 2, 3], [2, 1, 0, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
            let swapped = p.permuted(order).unwrap();
            for n in 0..=4 {
                assert_eq!(aw_monic(&p, n).unwrap(), aw_monic(&swapped, n).unwrap());
            }
        }
    }

    #[test]
    fn vanishing_pair_product_is_fine() {
        // ab = 1 makes (ab; q)_k vanish, which the cleared form tolerates
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        let p = AWParams::new(r(2, 1), r(1, 2), r(1, 3), r(1, 5), ctx).unwrap();
        assert!(!p.is_admissible());
        assert!(aw_monic(&p, 3).unwrap().is_monic());
    }

    #[test]
    fn degenerate_normalization_is_reported() {
        // abcd = 1/q kills the factor 1 - abcd q^{n-1} at n = 2
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        let q = ctx.q().clone();
        let p = AWParams::new(q.recip(), r(1, 1), r(1, 1), r(1, 1), ctx).unwrap();
        assert!(matches!(
            aw_monic(&p, 2),
            Err(AwError::DegenerateNormalization { n: 2 })
        ));
        assert!(matches!(
            AWParams::new(r(0, 1), r(1, 2), r(1, 2), r(1, 2), p.ctx().clone()),
            Err(AwError::Usage(_))
        ));
    }
}
