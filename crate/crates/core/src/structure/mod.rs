//! The divided-difference equation, the quartic `pi`, the contiguous
//! relations, the five-band structure relation and the operator `L`.

mod band;
mod contiguous;

use alloc::format;
use alloc::vec;

pub use band::{band_profile, expand_in_basis, expand_in_d2_basis};
pub use contiguous::{
    contiguous_k, k_coefficient, structure_coefficients, verify_contiguous,
    verify_structure_relation, Slot, StructureCoeffs,
};

use crate::awcalc::{apply_sq, dq, dq2};
use crate::error::AwError;
use crate::families::{aw_monic, AWParams};
use crate::numerics::{QContext, Scalar};
use crate::sympoly::XPoly;

/// The coefficients of `phi D_q^2 P_n + psi S_q D_q P_n + lambda_n P_n = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DDEData<S: Scalar> {
    pub phi: XPoly<S>,
    pub psi: XPoly<S>,
    abcd: S,
    ctx: QContext<S>,
}

impl<S: Scalar> DDEData<S> {
    /// `lambda_n = -4 sqrt(q) (q^n - 1)(q^n abcd - q) / ((q - 1)^2 q^n)`.
    pub fn lambda(&self, n: usize) -> S {
        lambda_n(&self.ctx, &self.abcd, n)
    }
}

fn lambda_n<S: Scalar>(ctx: &QContext<S>, abcd: &S, n: usize) -> S {
    let q = ctx.q();
    let qn = q.powi(n as i64);
    let qm1 = q.clone() - S::one();
    -(S::from_i64(4)
        * ctx.sqrt_q().clone()
        * (qn.clone() - S::one())
        * (qn.clone() * abcd.clone() - q.clone()))
        / (qm1.clone() * qm1 * qn)
}

/// `[e1 + e2 + e3 + e4, sum of pairs, sum of triples, product]`.
fn elementary<S: Scalar>(v: &[S; 4]) -> [S; 4] {
    let mut e = [S::zero(), S::zero(), S::zero(), S::zero()];
    for i in 0..4 {
        e[0] += v[i].clone();
        for j in i + 1..4 {
            e[1] += v[i].clone() * v[j].clone();
            for k in j + 1..4 {
                e[2] += v[i].clone() * v[j].clone() * v[k].clone();
            }
        }
    }
    e[3] = v[0].clone() * v[1].clone() * v[2].clone() * v[3].clone();
    e
}

/// `phi`, `psi` and `lambda_n`:
///
/// ```text
/// phi = 2(abcd + 1) x^2 - (e3 + e1) x + e2 - abcd - 1
/// psi = 4 sqrt(q)(abcd - 1) x / (q - 1) + 2 sqrt(q)(e1 - e3) / (q - 1)
/// ```
///
/// with `e1, e2, e3` the elementary symmetric sums of `a, b, c, d`.
pub fn dde_data<S: Scalar>(params: &AWParams<S>) -> DDEData<S> {
    let [e1, e2, e3, e4] = elementary(&params.values());
    let one = S::one();
    let phi = XPoly::from_coeffs(vec![
        e2 - e4.clone() - one.clone(),
        -(e3.clone() + e1.clone()),
        S::two() * (e4.clone() + one.clone()),
    ]);
    let ctx = params.ctx();
    let s = ctx.sqrt_q().clone();
    let qm1 = ctx.q().clone() - one.clone();
    let psi = XPoly::linear(
        S::from_i64(4) * s.clone() * (e4.clone() - one) / qm1.clone(),
        S::two() * s * (e1 - e3) / qm1,
    );
    DDEData {
        phi,
        psi,
        abcd: e4,
        ctx: ctx.clone(),
    }
}

/// `pi = phi^2 - U_2 psi^2`, and whether it equals
/// `16abcd prod_e (x - (e + 1/e)/2) = prod_e (2e x - e^2 - 1)`.
///
/// The comparison is exact in the exact backend; float backends compare
/// coefficient-wise with the caller's relative tolerance.
pub fn pi_poly<S: Scalar>(params: &AWParams<S>, tol: f64) -> (XPoly<S>, bool) {
    let dde = dde_data(params);
    let (_, u2) = params.ctx().u_coefficient_polys();
    let pi = &(&dde.phi * &dde.phi) - &(&u2 * &(&dde.psi * &dde.psi));
    let factored = pi_factored(params);
    let same = if S::EXACT {
        pi == factored
    } else {
        (&pi - &factored).max_abs_coeff() <= tol * factored.max_abs_coeff().max(1.0)
    };
    (pi, same)
}

/// `prod_{e in a,b,c,d} (2e x - e^2 - 1)`.
pub fn pi_factored<S: Scalar>(params: &AWParams<S>) -> XPoly<S> {
    params.values().iter().fold(XPoly::one(), |acc, e| {
        &acc * &XPoly::linear(S::two() * e.clone(), -(e.clone() * e.clone() + S::one()))
    })
}

/// `phi D_q^2 P_n + psi S_q D_q P_n + lambda_n P_n`.
pub fn verify_dde<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<XPoly<S>, AwError> {
    let dde = dde_data(params);
    let ctx = params.ctx();
    let p = aw_monic(params, n)?;
    let d1 = dq(ctx, &p);
    let lhs = &(&dde.phi * &dq(ctx, &d1)) + &(&dde.psi * &apply_sq(ctx, &d1));
    Ok(&lhs + &p.scale(&dde.lambda(n)))
}

/// Residuals of `D_q P_n = gamma_n P_{n-1}(q^{1/2} a, ...)` and
/// `D_q^2 P_n = gamma_n gamma_{n-1} P_{n-2}(qa, ...)`. For `n = 0` (and
/// `n < 2` in the second) the right side is zero.
pub fn verify_shift<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
) -> Result<(XPoly<S>, XPoly<S>), AwError> {
    let ctx = params.ctx();
    let p = aw_monic(params, n)?;
    let d1 = dq(ctx, &p);
    let first = if n >= 1 {
        let shifted = aw_monic(&params.half_shifted()?, n - 1)?;
        &d1 - &shifted.scale(&ctx.gamma(n as i64))
    } else {
        d1.clone()
    };
    let d2 = dq(ctx, &d1);
    let second = if n >= 2 {
        let q = ctx.q().clone();
        let shifted = aw_monic(&params.scaled([&q, &q, &q, &q])?, n - 2)?;
        let g = ctx.gamma(n as i64) * ctx.gamma(n as i64 - 1);
        &d2 - &shifted.scale(&g)
    } else {
        d2
    };
    Ok((first, second))
}

/// `xi = (1 - q^2) / (2q)`.
pub fn koornwinder_xi<S: Scalar>(ctx: &QContext<S>) -> S {
    let q = ctx.q();
    (S::one() - q.clone() * q.clone()) / (S::two() * q.clone())
}

/// `L p = xi (2 phi D_q S_q p + 2 psi S_q^2 p - psi p)`.
pub fn koornwinder_l<S: Scalar>(params: &AWParams<S>, p: &XPoly<S>) -> XPoly<S> {
    let dde = dde_data(params);
    let ctx = params.ctx();
    let sp = apply_sq(ctx, p);
    let two = S::two();
    let body = &(&(&dde.phi * &dq(ctx, &sp)).scale(&two)
        + &(&dde.psi * &apply_sq(ctx, &sp)).scale(&two))
        - &(&dde.psi * p);
    body.scale(&koornwinder_xi(ctx))
}

/// Residual of
///
/// ```text
/// psi L P_n = -2 alpha xi pi D_q^2 P_n + xi (psi^2 - 2 lambda_n (alpha phi + U_1 psi)) P_n
/// ```
///
/// which follows from the composition rules and the divided-difference
/// equation.
pub fn verify_koornwinder<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<XPoly<S>, AwError> {
    let ctx = params.ctx();
    let dde = dde_data(params);
    let (u1, _) = ctx.u_coefficient_polys();
    let xi = koornwinder_xi(ctx);
    let alpha = ctx.alpha().clone();
    let p = aw_monic(params, n)?;
    let pi = pi_factored(params);
    let lhs = &dde.psi * &koornwinder_l(params, &p);
    let first = (&pi * &dq2(ctx, &p)).scale(&(-(S::two() * alpha.clone() * xi.clone())));
    let inner = &dde.phi.scale(&alpha) + &(&u1 * &dde.psi);
    let bracket = &(&dde.psi * &dde.psi) - &inner.scale(&(S::two() * dde.lambda(n)));
    let second = (&bracket * &p).scale(&xi);
    Ok(&(&lhs - &first) - &second)
}

/// Residual of the `L` identity in the form it is usually quoted:
///
/// ```text
/// psi L P_n = xi pi D_q^2 P_n + ((q - 1)/sqrt q) [psi^2
///     + 4 sqrt q (q^n - 1)(q^{n-1} abcd - 1) / ((q - 1)^2 q^{n-1})
///       * (phi / sqrt q + (q - 1)^2 / (2q) x psi)] P_n
/// ```
///
/// It does not vanish; it is kept to document the discrepancy with
/// [`verify_koornwinder`].
pub fn quoted_koornwinder_residual<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
) -> Result<XPoly<S>, AwError> {
    let ctx = params.ctx();
    let dde = dde_data(params);
    let q = ctx.q().clone();
    let s = ctx.sqrt_q().clone();
    let one = S::one();
    let qm1 = q.clone() - one.clone();
    let p = aw_monic(params, n)?;
    let lhs = &dde.psi * &koornwinder_l(params, &p);
    let first = (&pi_factored(params) * &dq2(ctx, &p)).scale(&koornwinder_xi(ctx));
    let qn = q.powi(n as i64);
    let qn1 = q.powi(n as i64 - 1);
    let mult =
        S::from_i64(4) * s.clone() * (qn - one.clone()) * (qn1.clone() * params.abcd() - one)
            / (qm1.clone() * qm1.clone() * qn1);
    let x_psi = &XPoly::x() * &dde.psi;
    let tail =
        &dde.phi.scale(&s.recip()) + &x_psi.scale(&(qm1.clone() * qm1.clone() / (S::two() * q)));
    let bracket = &(&dde.psi * &dde.psi) + &tail.scale(&mult);
    let second = (&bracket * &p).scale(&(qm1 / s));
    Ok(&(&lhs - &first) - &second)
}

/// Checks that a residual vanishes: structurally in the exact backend, below
/// `tol` relative to `scale` otherwise.
pub fn residual_vanishes<S: Scalar>(residual: &XPoly<S>, scale: f64, tol: f64) -> bool {
    if S::EXACT {
        residual.is_zero()
    } else {
        residual.max_abs_coeff() <= tol * scale.max(1.0)
    }
}

pub(crate) fn degree_error(what: &str, k: usize) -> AwError {
    AwError::usage(format!(
        "{} basis element {} does not have degree {}",
        what, k, k
    ))
}
