//! Polynomials in `x = cos θ`, their symmetric Laurent lifts in `z` under
//! `x = (z + 1/z) / 2`, and the monic `F_k` basis.

mod laurent;
mod xpoly;

use alloc::vec;
use alloc::vec::Vec;

pub use laurent::{Laurent, SymLaurent};
pub use xpoly::XPoly;

use crate::error::AwError;
use crate::numerics::{QContext, Scalar};

/// `C(d, j)` for `j = 0..=d` in the scalar field.
fn binomial_row<S: Scalar>(d: usize) -> Vec<S> {
    let mut row = Vec::with_capacity(d + 1);
    let mut c = S::one();
    row.push(c.clone());
    for j in 0..d {
        c = c * S::from_i64((d - j) as i64) / S::from_i64((j + 1) as i64);
        row.push(c.clone());
    }
    row
}

/// The lift `p((z + 1/z) / 2)`, expanded with
/// `x^d -> 2^{-d} sum_j C(d, j) z^{d - 2j}`.
pub fn x_to_laurent<S: Scalar>(p: &XPoly<S>) -> SymLaurent<S> {
    let Some(deg) = p.degree() else {
        return SymLaurent::from_nonnegative(&[]);
    };
    let mut half = vec![S::zero(); deg + 1];
    let two_inv = S::two().recip();
    let mut scale = S::one();
    for (d, c) in p.coefficients().iter().enumerate() {
        if !c.is_zero() {
            let row = binomial_row::<S>(d);
            // only exponents d - 2j >= 0; the mirror image is implied
            for (j, b) in row.iter().enumerate().take(d / 2 + 1) {
                half[d - 2 * j] += c.clone() * scale.clone() * b.clone();
            }
        }
        scale *= two_inv.clone();
    }
    SymLaurent::from_nonnegative(&half)
}

/// The inverse of [`x_to_laurent`]: peels `2^d x^d` off the top exponent
/// downwards. Exact and `O(d^2)`.
pub fn laurent_to_x<S: Scalar>(l: &SymLaurent<S>) -> XPoly<S> {
    let Some(top) = l.top_exponent() else {
        return XPoly::zero();
    };
    let top = top as usize;
    let mut half: Vec<S> = (0..=top).map(|k| l.coefficient(k as i64)).collect();
    let mut out = vec![S::zero(); top + 1];
    for d in (0..=top).rev() {
        let c = core::mem::replace(&mut half[d], S::zero());
        if c.is_zero() {
            continue;
        }
        let row = binomial_row::<S>(d);
        for (j, b) in row.iter().enumerate().take(d / 2 + 1).skip(1) {
            half[d - 2 * j] -= c.clone() * b.clone();
        }
        out[d] = c * S::two().powi(d as i64);
    }
    XPoly::from_coeffs(out)
}

/// The monic basis `F_k(x) = prod_{j<k} (x - zeta_j)` with
/// `zeta_j = (q^{-1/4 - j/2} + q^{1/4 + j/2}) / 2`. Needs `u = q^{1/4}`.
pub fn f_basis<S: Scalar>(ctx: &QContext<S>, k: usize) -> Result<XPoly<S>, AwError> {
    let nodes = f_basis_nodes(ctx, k)?;
    Ok(XPoly::from_roots(nodes.iter()))
}

/// `zeta_0, ..., zeta_{k-1}`.
pub fn f_basis_nodes<S: Scalar>(ctx: &QContext<S>, k: usize) -> Result<Vec<S>, AwError> {
    let u = ctx.require_u()?;
    Ok((0..k as i64)
        .map(|j| {
            let e = 1 + 2 * j;
            (u.powi(-e) + u.powi(e)).half()
        })
        .collect())
}

/// Evaluates a polynomial at `x0`.
pub fn evaluate<S: Scalar>(p: &XPoly<S>, x0: &S) -> S {
    p.evaluate(x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn lift_small_cases() {
        let one = x_to_laurent(&XPoly::<Rational>::one());
        assert_eq!(one.as_laurent(), &Laurent::from_terms([(0, r(1, 1))]));
        let x = x_to_laurent(&XPoly::<Rational>::x());
        assert_eq!(
            x.as_laurent(),
            &Laurent::from_terms([(1, r(1, 2)), (-1, r(1, 2))])
        );
        let x2 = x_to_laurent(&XPoly::<Rational>::monomial(r(1, 1), 2));
        assert_eq!(
            x2.as_laurent(),
            &Laurent::from_terms([(2, r(1, 4)), (0, r(1, 2)), (-2, r(1, 4))])
        );
    }

    #[test]
    fn lower_small_cases() {
        let l = SymLaurent::new(Laurent::from_terms([(0, r(1, 1))])).unwrap();
        assert_eq!(laurent_to_x(&l), XPoly::one());
        let l = SymLaurent::new(Laurent::from_terms([(1, r(1, 2)), (-1, r(1, 2))])).unwrap();
        assert_eq!(laurent_to_x(&l), XPoly::x());
        let l = SymLaurent::new(Laurent::from_terms([
            (2, r(1, 4)),
            (0, r(1, 2)),
            (-2, r(1, 4)),
        ]))
        .unwrap();
        assert_eq!(laurent_to_x(&l), XPoly::monomial(r(1, 1), 2));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let l = Laurent::from_terms([(1, r(1, 2)), (-1, r(1, 3))]);
        assert!(matches!(
            SymLaurent::new(l),
            Err(AwError::InvariantViolation(_))
        ));
    }

    #[test]
    fn f_basis_small() {
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        assert_eq!(f_basis(&ctx, 0).unwrap(), XPoly::one());
        assert_eq!(f_basis(&ctx, 1).unwrap(), XPoly::linear(r(1, 1), -r(5, 4)));
        let f2 = f_basis(&ctx, 2).unwrap();
        // zeta_1 = (u^-3 + u^3) / 2 = 65/16
        let expected = &XPoly::linear(r(1, 1), -r(5, 4)) * &XPoly::linear(r(1, 1), -r(65, 16));
        assert_eq!(f2, expected);
        assert!(evaluate(&f_basis(&ctx, 1).unwrap(), &r(5, 4)).is_zero());
    }

    #[test]
    fn f_basis_needs_quarter_root() {
        let ctx = QContext::from_q(r(1, 4)).unwrap();
        assert!(f_basis(&ctx, 2).is_err());
    }
}
