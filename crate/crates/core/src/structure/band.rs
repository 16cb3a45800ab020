use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::degree_error;
use crate::awcalc::dq2;
use crate::error::AwError;
use crate::families::{aw_family, AWParams};
use crate::numerics::{QContext, Scalar};
use crate::sympoly::XPoly;

/// Coefficients of `target` in `basis`, where `basis[k]` has degree exactly
/// `k`. Eliminates from the top degree down; `out[k]` multiplies `basis[k]`.
pub fn expand_in_basis<S: Scalar>(
    target: &XPoly<S>,
    basis: &[XPoly<S>],
) -> Result<Vec<S>, AwError> {
    for (k, b) in basis.iter().enumerate() {
        if b.degree() != Some(k) {
            return Err(degree_error("expansion", k));
        }
    }
    let Some(deg) = target.degree() else {
        return Ok(vec![S::zero(); basis.len()]);
    };
    if deg >= basis.len() {
        return Err(AwError::usage(format!(
            "cannot expand a degree {} polynomial in {} basis elements",
            deg,
            basis.len()
        )));
    }
    let mut rest = target.clone();
    let mut out = vec![S::zero(); basis.len()];
    for k in (0..=deg).rev() {
        let c = rest.coeff(k) / basis[k].leading().cloned().unwrap_or_else(S::one);
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
        }
        out[k] = c;
    }
    Ok(out)
}

/// Expands `pi D_q^2 P_n` in `P_0, ..., P_{n+2}` taken from `family`.
/// For an Askey-Wilson family every entry below `n - 2` vanishes.
pub fn band_profile<S: Scalar>(
    ctx: &QContext<S>,
    family: &[XPoly<S>],
    pi: &XPoly<S>,
    n: usize,
) -> Result<Vec<S>, AwError> {
    if family.len() < n + 3 {
        return Err(AwError::usage(format!(
            "band profile at n = {} needs P_0..P_{}",
            n,
            n + 2
        )));
    }
    let target = pi * &dq2(ctx, &family[n]);
    expand_in_basis(&target, &family[..n + 3])
}

/// Expands `P_n` in `D_q^2 P_2, ..., D_q^2 P_{n+2}`; entry `i` multiplies
/// `D_q^2 P_{i+2}`. In the exact backend a nonzero entry below `n - 2` is an
/// invariant violation.
pub fn expand_in_d2_basis<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<Vec<S>, AwError> {
    if n < 4 {
        return Err(AwError::usage("expansion in the D_q^2 basis needs n >= 4"));
    }
    let ctx = params.ctx();
    let family = aw_family(params, n + 2)?;
    let basis: Vec<XPoly<S>> = family[2..].iter().map(|p| dq2(ctx, p)).collect();
    let coeffs = expand_in_basis(&family[n], &basis)?;
    if S::EXACT {
        if let Some(k) = (0..n - 4).find(|&i| !coeffs[i].is_zero()) {
            return Err(AwError::invariant(format!(
                "P_{} has a component along D_q^2 P_{}",
                n,
                k + 2
            )));
        }
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::extract_recurrence;
    use crate::numerics::Rational;
    use crate::structure::{pi_factored, structure_coefficients};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn params() -> AWParams<Rational> {
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        AWParams::new(r(1, 2), r(1, 3), r(1, 5), r(1, 7), ctx).unwrap()
    }

    #[test]
    fn band_matches_structure_coefficients() {
        let p = params();
        let family = aw_family(&p, 7).unwrap();
        let pi = pi_factored(&p);
        let prof = band_profile(p.ctx(), &family, &pi, 5).unwrap();
        assert!(prof[..3].iter().all(|c| c.is_zero()));
        let prof4 = band_profile(p.ctx(), &family, &pi, 4).unwrap();
        let coeffs = structure_coefficients(&p, 4).unwrap();
        assert_eq!(&prof4[2..7], &coeffs.band[..]);
    }

    #[test]
    fn perturbed_family_leaves_the_band() {
        let p = params();
        let rec = extract_recurrence(&p, 9).unwrap().perturbed_b(3, &r(1, 10));
        let family = rec.monic_family(10).unwrap();
        let pi = pi_factored(&p);
        let broken = (2..=8).any(|n| {
            let prof = band_profile(p.ctx(), &family, &pi, n).unwrap();
            prof[..n - 2].iter().any(|c| !c.is_zero())
        });
        assert!(broken);
    }

    #[test]
    fn d2_expansion_top_coefficient() {
        let p = params();
        let coeffs = expand_in_d2_basis(&p, 4).unwrap();
        let ctx = p.ctx();
        assert_eq!(coeffs.len(), 5);
        assert_eq!(coeffs[4], (ctx.gamma(6) * ctx.gamma(5)).recip());
        assert!(expand_in_d2_basis(&p, 3).is_err());
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        let basis = [XPoly::one(), XPoly::monomial(r(1, 1), 2)];
        assert!(matches!(
            expand_in_basis(&XPoly::x(), &basis),
            Err(AwError::Usage(_))
        ));
    }
}
