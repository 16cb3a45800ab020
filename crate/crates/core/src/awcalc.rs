//! The divided-difference operator `D_q`, the averaging operator `S_q` and
//! the half-shifts `T_nu`, all applied through the Laurent lift.
//!
//! With `s = q^{1/2}` and `p^(z) = p((z + 1/z) / 2)`:
//!
//! ```text
//! D_q p = (p^(s z) - p^(z / s)) / ((z - 1/z)(s - 1/s) / 2)
//! S_q p = (p^(s z) + p^(z / s)) / 2
//! ```

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::AwError;
use crate::numerics::{QContext, Scalar};
use crate::sympoly::{laurent_to_x, x_to_laurent, Laurent, SymLaurent, XPoly};

/// Output of [`apply_dq`] together with the data its degree invariant is
/// stated in.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorResult<S: Scalar> {
    pub output: XPoly<S>,
    /// `None` for the zero polynomial.
    pub input_degree: Option<usize>,
    /// Leading coefficient of the output over that of the input, when both exist.
    pub leading_ratio: Option<S>,
}

/// Exactly divides an antisymmetric Laurent polynomial by `z - 1/z`.
///
/// Works top-down: with `N = (z - 1/z) Q`, `n_k = q_{k-1} - q_{k+1}`, so
/// `q_{k-1} = n_k + q_{k+1}`. Only the nonnegative half of the symmetric
/// quotient is computed. In the exact backend the product is multiplied back
/// and compared, since a remainder can only come from a defect.
fn divide_by_z_minus_inv<S: Scalar>(n: &Laurent<S>) -> SymLaurent<S> {
    let Some(top) = n.max_exponent() else {
        return SymLaurent::from_nonnegative(&[]);
    };
    if top < 1 {
        // a nonzero antisymmetric polynomial has positive top exponent
        assert!(!S::EXACT, "nonzero remainder dividing {:?} by z - 1/z", n);
        return SymLaurent::from_nonnegative(&[]);
    }
    let top = top as usize;
    // half[j] = q_j for j = 0..top-1
    let mut half = vec![S::zero(); top];
    for k in (1..=top).rev() {
        let next = if k + 1 < top {
            half[k + 1].clone()
        } else {
            S::zero()
        };
        half[k - 1] = n.coefficient(k as i64) + next;
    }
    let quotient = SymLaurent::from_nonnegative(&half);
    if S::EXACT {
        let z_minus_inv = Laurent::from_terms([(1, S::one()), (-1, -S::one())]);
        let back = &z_minus_inv * quotient.as_laurent();
        assert!(back == *n, "nonzero remainder dividing {:?} by z - 1/z", n);
    }
    quotient
}

/// Resymmetrizes a Laurent polynomial that is symmetric in exact arithmetic.
fn symmetric_part<S: Scalar>(l: Laurent<S>) -> SymLaurent<S> {
    if S::EXACT {
        match SymLaurent::new(l) {
            Ok(sym) => sym,
            Err(e) => panic!("{}", e),
        }
    } else {
        let top = l
            .max_exponent()
            .unwrap_or(-1)
            .max(-l.min_exponent().unwrap_or(1));
        let half: Vec<S> = (0..=top)
            .map(|k| (l.coefficient(k) + l.coefficient(-k)).half())
            .collect();
        SymLaurent::from_nonnegative(&half)
    }
}

fn shifted_pair<S: Scalar>(ctx: &QContext<S>, p: &XPoly<S>) -> (Laurent<S>, Laurent<S>) {
    let lift = x_to_laurent(p).into_laurent();
    let s = ctx.sqrt_q();
    (lift.dilate(s), lift.dilate(&s.recip()))
}

/// `D_q p` with its degree bookkeeping.
pub fn apply_dq<S: Scalar>(ctx: &QContext<S>, p: &XPoly<S>) -> OperatorResult<S> {
    let output = dq(ctx, p);
    let leading_ratio = match (p.leading(), output.leading()) {
        (Some(lp), Some(lo)) => Some(lo.clone() / lp.clone()),
        _ => None,
    };
    OperatorResult {
        output,
        input_degree: p.degree(),
        leading_ratio,
    }
}

/// `D_q p` as a bare polynomial.
pub fn dq<S: Scalar>(ctx: &QContext<S>, p: &XPoly<S>) -> XPoly<S> {
    if p.degree().unwrap_or(0) == 0 {
        return XPoly::zero();
    }
    let (up, down) = shifted_pair(ctx, p);
    let quotient = divide_by_z_minus_inv(&(&up - &down));
    let s = ctx.sqrt_q();
    let scale = S::two() / (s.clone() - s.recip());
    laurent_to_x(&quotient).scale(&scale)
}

/// `D_q^2 p`, i.e. [`dq`] applied twice.
pub fn dq2<S: Scalar>(ctx: &QContext<S>, p: &XPoly<S>) -> XPoly<S> {
    dq(ctx, &dq(ctx, p))
}

/// `S_q p`.
pub fn apply_sq<S: Scalar>(ctx: &QContext<S>, p: &XPoly<S>) -> XPoly<S> {
    let (up, down) = shifted_pair(ctx, p);
    let avg = (&up + &down).scale(&S::two().recip());
    laurent_to_x(&symmetric_part(avg))
}

/// Direction of the half-shift `T_nu`, `nu = +1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    Up,
    Down,
}

impl Shift {
    pub fn from_nu(nu: i32) -> Result<Self, AwError> {
        match nu {
            1 => Ok(Shift::Up),
            -1 => Ok(Shift::Down),
            _ => Err(AwError::usage(format!(
                "T_nu needs nu = +1 or -1, got {}",
                nu
            ))),
        }
    }
}

/// `T_nu p = p^(q^{nu/2} z)`. The result is generally not symmetric.
pub fn apply_tnu<S: Scalar>(ctx: &QContext<S>, p: &XPoly<S>, nu: Shift) -> Laurent<S> {
    let lift = x_to_laurent(p).into_laurent();
    match nu {
        Shift::Up => lift.dilate(ctx.sqrt_q()),
        Shift::Down => lift.dilate(&ctx.sqrt_q().recip()),
    }
}

/// The product and composition rules for `D_q` and `S_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `D(fg) = S(f) D(g) + D(f) S(g)`
    ProductD,
    /// `S(fg) = S(f) S(g) + U_2 D(f) D(g)`
    ProductS,
    /// `D S = alpha S D + U_1 D^2`
    ComposeDS,
    /// `S^2 = U_1 S D + alpha U_2 D^2 + Id`
    ComposeSS,
}

impl Rule {
    pub const ALL: [Rule; 4] = [
        Rule::ProductD,
        Rule::ProductS,
        Rule::ComposeDS,
        Rule::ComposeSS,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::ProductD => "product-D",
            Rule::ProductS => "product-S",
            Rule::ComposeDS => "compose-DS",
            Rule::ComposeSS => "compose-SS",
        }
    }

    /// Whether the rule acts on a pair `(f, g)`.
    pub fn takes_pair(self) -> bool {
        matches!(self, Rule::ProductD | Rule::ProductS)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Rule {
    type Err = AwError;
    fn from_str(s: &str) -> Result<Self, AwError> {
        Rule::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| AwError::usage(format!("unknown rule {:?}", s)))
    }
}

/// `LHS - RHS` of `rule`; the zero polynomial when the rule holds.
pub fn verify_identity<S: Scalar>(
    ctx: &QContext<S>,
    rule: Rule,
    f: &XPoly<S>,
    g: Option<&XPoly<S>>,
) -> Result<XPoly<S>, AwError> {
    let (u1, u2) = ctx.u_coefficient_polys();
    let alpha = ctx.alpha();
    let pair = || g.ok_or_else(|| AwError::usage(format!("rule {} needs two polynomials", rule)));
    let residual = match rule {
        Rule::ProductD => {
            let g = pair()?;
            let lhs = dq(ctx, &(f * g));
            let rhs = &(&apply_sq(ctx, f) * &dq(ctx, g)) + &(&dq(ctx, f) * &apply_sq(ctx, g));
            &lhs - &rhs
        }
        Rule::ProductS => {
            let g = pair()?;
            let lhs = apply_sq(ctx, &(f * g));
            let rhs =
                &(&apply_sq(ctx, f) * &apply_sq(ctx, g)) + &(&u2 * &(&dq(ctx, f) * &dq(ctx, g)));
            &lhs - &rhs
        }
        Rule::ComposeDS => {
            let lhs = dq(ctx, &apply_sq(ctx, f));
            let rhs = &apply_sq(ctx, &dq(ctx, f)).scale(alpha) + &(&u1 * &dq2(ctx, f));
            &lhs - &rhs
        }
        Rule::ComposeSS => {
            let lhs = apply_sq(ctx, &apply_sq(ctx, f));
            let rhs =
                &(&(&u1 * &apply_sq(ctx, &dq(ctx, f))) + &(&u2 * &dq2(ctx, f)).scale(alpha)) + f;
            &lhs - &rhs
        }
    };
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use crate::sympoly::f_basis;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn q_quarter() -> QContext<Rational> {
        QContext::from_q(r(1, 4)).unwrap()
    }

    #[test]
    fn dq_small_cases() {
        let ctx = q_quarter();
        assert!(dq(&ctx, &XPoly::one()).is_zero());
        assert_eq!(dq(&ctx, &XPoly::x()), XPoly::one());
        let res = apply_dq(&ctx, &XPoly::monomial(r(1, 1), 2));
        assert_eq!(res.output, XPoly::monomial(r(5, 2), 1));
        assert_eq!(res.input_degree, Some(2));
        assert_eq!(res.leading_ratio, Some(ctx.gamma(2)));
    }

    #[test]
    fn sq_small_cases() {
        let ctx = q_quarter();
        assert_eq!(apply_sq(&ctx, &XPoly::one()), XPoly::one());
        assert_eq!(apply_sq(&ctx, &XPoly::x()), XPoly::monomial(r(5, 4), 1));
        let x2 = XPoly::monomial(r(1, 1), 2);
        assert_eq!(
            apply_sq(&ctx, &x2),
            XPoly::from_coeffs(vec![r(-9, 16), r(0, 1), r(17, 8)])
        );
    }

    #[test]
    fn tnu_small_cases() {
        let ctx = q_quarter();
        assert_eq!(
            apply_tnu(&ctx, &XPoly::one(), Shift::Up),
            Laurent::from_terms([(0, r(1, 1))])
        );
        assert_eq!(
            apply_tnu(&ctx, &XPoly::x(), Shift::Up),
            Laurent::from_terms([(1, r(1, 4)), (-1, r(1, 1))])
        );
        let x2 = XPoly::monomial(r(1, 1), 2);
        let avg =
            (&apply_tnu(&ctx, &x2, Shift::Up) + &apply_tnu(&ctx, &x2, Shift::Down)).scale(&r(1, 2));
        assert_eq!(avg, x_to_laurent(&apply_sq(&ctx, &x2)).into_laurent());
        assert!(Shift::from_nu(0).is_err());
    }

    #[test]
    fn dq_lowers_the_f_basis() {
        for u in [r(1, 2), r(2, 5)] {
            let ctx = QContext::from_u(u).unwrap();
            for k in 1..=10 {
                let lhs = dq(&ctx, &f_basis(&ctx, k).unwrap());
                let rhs = f_basis(&ctx, k - 1).unwrap().scale(&ctx.gamma(k as i64));
                assert_eq!(lhs, rhs, "k = {}", k);
            }
        }
    }

    #[test]
    fn rule_examples() {
        let ctx = q_quarter();
        let p = XPoly::from_coeffs(vec![r(1, 3), r(-2, 1), r(0, 1), r(5, 7)]);
        let one = XPoly::one();
        assert!(verify_identity(&ctx, Rule::ProductD, &one, Some(&p))
            .unwrap()
            .is_zero());
        assert!(verify_identity(&ctx, Rule::ComposeSS, &XPoly::x(), None)
            .unwrap()
            .is_zero());
        let x = XPoly::x();
        assert!(verify_identity(&ctx, Rule::ProductS, &x, Some(&x))
            .unwrap()
            .is_zero());
        assert!(matches!(
            verify_identity(&ctx, Rule::ProductD, &x, None),
            Err(AwError::Usage(_))
        ));
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in Rule::ALL {
            assert_eq!(rule.as_str().parse::<Rule>().unwrap(), rule);
        }
        assert!("product-X".parse::<Rule>().is_err());
    }

    #[test]
    fn float_backend_agrees() {
        let ctx = QContext::from_q(0.25f64).unwrap();
        let x2 = XPoly::monomial(1.0f64, 2);
        let d = dq(&ctx, &x2);
        assert!((d.coeff(1) - 2.5).abs() < 1e-14);
        assert!(d.coeff(0).abs() < 1e-14);
        let s = apply_sq(&ctx, &x2);
        assert!((s.coeff(2) - 17.0 / 8.0).abs() < 1e-14);
        assert!((s.coeff(0) + 9.0 / 16.0).abs() < 1e-14);
    }
}
