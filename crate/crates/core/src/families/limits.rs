use alloc::format;

use super::recurrence::cdqhahn_poly;
use super::{aw_series_poly, AWParams};
use crate::error::AwError;
use crate::numerics::{q_pochhammer, QContext, Scalar};
use crate::sympoly::XPoly;

/// The four families reached by sending parameters to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitFamily {
    /// `d -> oo`, survivors `(a, b, c)`; scaled by `1 / (ad; q)_n`.
    ContinuousDualQHahn,
    /// `c, d -> oo`, survivors `(a, b)`; scaled by `a^n / (ac, ad; q)_n`.
    AlSalamChihara,
    /// `b, c, d -> oo`, survivor `a`; scaled by `a^n / (ab, ac, ad; q)_n`.
    ContinuousBigQHermite,
    /// `a, b, c, d -> oo`; scaled by `a^{2n} / (ab, ac, ad; q)_n`.
    ContinuousQHermite,
}

impl LimitFamily {
    pub const ALL: [LimitFamily; 4] = [
        LimitFamily::ContinuousDualQHahn,
        LimitFamily::AlSalamChihara,
        LimitFamily::ContinuousBigQHermite,
        LimitFamily::ContinuousQHermite,
    ];

    /// Number of parameters that stay finite.
    pub fn survivors(self) -> usize {
        match self {
            LimitFamily::ContinuousDualQHahn => 3,
            LimitFamily::AlSalamChihara => 2,
            LimitFamily::ContinuousBigQHermite => 1,
            LimitFamily::ContinuousQHermite => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LimitFamily::ContinuousDualQHahn => "continuous-dual-q-hahn",
            LimitFamily::AlSalamChihara => "al-salam-chihara",
            LimitFamily::ContinuousBigQHermite => "continuous-big-q-hermite",
            LimitFamily::ContinuousQHermite => "continuous-q-hermite",
        }
    }
}

impl core::str::FromStr for LimitFamily {
    type Err = AwError;
    fn from_str(s: &str) -> Result<Self, AwError> {
        LimitFamily::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| AwError::usage(format!("unknown limit family {:?}", s)))
    }
}

/// A scaled polynomial at a large parameter value and its convergence
/// diagnostic.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate<S: Scalar> {
    /// The scaled polynomial at `large`.
    pub estimate: XPoly<S>,
    /// The scaled polynomial at `10 * large`.
    pub next: XPoly<S>,
    /// Largest coefficient difference between the two.
    pub deviation: f64,
}

/// Largest coefficient difference, as `f64`.
pub(crate) fn coefficient_distance<S: Scalar>(p: &XPoly<S>, r: &XPoly<S>) -> f64 {
    (p - r).max_abs_coeff()
}

/// The scaled Askey-Wilson polynomial of `kind` with every diverging
/// parameter set to `large`.
pub fn scaled_limit_poly<S: Scalar>(
    kind: LimitFamily,
    survivors: &[S],
    ctx: &QContext<S>,
    n: usize,
    large: &S,
) -> Result<XPoly<S>, AwError> {
    if survivors.len() != kind.survivors() {
        return Err(AwError::usage(format!(
            "{} keeps {} finite parameters, got {}",
            kind.as_str(),
            kind.survivors(),
            survivors.len()
        )));
    }
    let mut v = [large.clone(), large.clone(), large.clone(), large.clone()];
    v[..survivors.len()].clone_from_slice(survivors);
    let [a, b, c, d] = v;
    let params = AWParams::new(a.clone(), b.clone(), c.clone(), d.clone(), ctx.clone())?;
    let p = aw_series_poly(&params, n)?;
    let q = ctx.q();
    let poch = |e: S| q_pochhammer(&e, q, n);
    let nn = n as i64;
    let factor = match kind {
        LimitFamily::ContinuousDualQHahn => poch(a * d).recip(),
        LimitFamily::AlSalamChihara => a.powi(nn) / (poch(a.clone() * c) * poch(a * d)),
        LimitFamily::ContinuousBigQHermite => {
            a.powi(nn) / (poch(a.clone() * b) * poch(a.clone() * c) * poch(a * d))
        }
        LimitFamily::ContinuousQHermite => {
            a.powi(2 * nn) / (poch(a.clone() * b) * poch(a.clone() * c) * poch(a * d))
        }
    };
    if factor.is_zero() || !factor.is_finite() {
        return Err(AwError::singular(format!(
            "{} scaling at degree {}",
            kind.as_str(),
            n
        )));
    }
    let out = p.scale(&factor);
    if out.coefficients().iter().any(|c| !c.is_finite()) {
        return Err(AwError::Precision {
            what: format!("{} scaled polynomial", kind.as_str()),
        });
    }
    Ok(out)
}

/// Evaluates the scaled expression at `large` and `10 * large` and reports
/// how far apart the two are.
pub fn limit_family_eval<S: Scalar>(
    kind: LimitFamily,
    survivors: &[S],
    ctx: &QContext<S>,
    n: usize,
    large: &S,
) -> Result<LimitEstimate<S>, AwError> {
    let estimate = scaled_limit_poly(kind, survivors, ctx, n, large)?;
    let next = scaled_limit_poly(kind, survivors, ctx, n, &(large.clone() * S::from_i64(10)))?;
    let deviation = coefficient_distance(&estimate, &next);
    Ok(LimitEstimate {
        estimate,
        next,
        deviation,
    })
}

/// The `d -> oo` limit of `p_n / (ad; q)_n`, built from the recurrence:
/// `(bc)^n q^{n(n-1)} 2^n q_n(x; a, b, c | q)`.
pub fn cdqhahn_limit_target<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    ctx: &QContext<S>,
    n: usize,
) -> Result<XPoly<S>, AwError> {
    let nn = n as i64;
    let scale = (b.clone() * c.clone()).powi(nn) * ctx.q().powi(nn * (nn - 1)) * S::two().powi(nn);
    Ok(cdqhahn_poly(a, b, c, ctx, n)?.scale(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn dual_hahn_limit_approaches_target() {
        let ctx = QContext::from_q(r(1, 4)).unwrap();
        let surv = [r(1, 2), r(1, 3), r(1, 5)];
        let target = cdqhahn_limit_target(&surv[0], &surv[1], &surv[2], &ctx, 3).unwrap();
        let mut last = f64::INFINITY;
        for large in [100, 1000, 10000] {
            let est = scaled_limit_poly(
                LimitFamily::ContinuousDualQHahn,
                &surv,
                &ctx,
                3,
                &r(large, 1),
            )
            .unwrap();
            let dev = coefficient_distance(&est, &target);
            assert!(dev < last / 5.0, "large = {}: {} vs {}", large, dev, last);
            last = dev;
        }
    }

    #[test]
    fn hermite_degree_one_tends_to_2x() {
        let ctx = QContext::from_q(r(1, 4)).unwrap();
        let est =
            limit_family_eval(LimitFamily::ContinuousQHermite, &[], &ctx, 1, &r(1000, 1)).unwrap();
        let limit = XPoly::monomial(r(2, 1), 1);
        assert!(
            coefficient_distance(&est.next, &limit) < coefficient_distance(&est.estimate, &limit)
        );
        assert!(coefficient_distance(&est.next, &limit) < 1e-3);
    }

    #[test]
    fn survivor_count_is_checked() {
        let ctx = QContext::from_q(r(1, 4)).unwrap();
        assert!(matches!(
            limit_family_eval(LimitFamily::AlSalamChihara, &[r(1, 2)], &ctx, 2, &r(100, 1)),
            Err(AwError::Usage(_))
        ));
        assert_eq!(
            "al-salam-chihara".parse::<LimitFamily>().unwrap(),
            LimitFamily::AlSalamChihara
        );
    }
}
