use alloc::format;
use alloc::vec::Vec;

use super::{aw_family, AWParams};
use crate::error::AwError;
use crate::numerics::{QContext, Scalar};
use crate::sympoly::XPoly;

/// Where a set of recurrence coefficients came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Solved from polynomials built by the series.
    Extracted,
    /// Written down in closed form (the limit family recurrence).
    Explicit,
    /// An extracted or explicit set with one coefficient altered on purpose.
    Perturbed,
}

/// Coefficients of `P_{n+1} = (x - a_n) P_n - b_n P_{n-1}`.
///
/// `a` holds `a_0, a_1, ...` and `b` holds `b_1, b_2, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs<S> {
    pub a: Vec<S>,
    pub b: Vec<S>,
    pub provenance: Provenance,
}

impl<S: Scalar> RecurrenceCoeffs<S> {
    /// `b_n` for `n >= 1`.
    pub fn b_n(&self, n: usize) -> &S {
        &self.b[n - 1]
    }

    /// Largest `n` for which `P_n` can be generated.
    pub fn max_degree(&self) -> usize {
        self.a.len().min(self.b.len() + 1)
    }

    /// `P_0, ..., P_{n_max}` regenerated from the recurrence.
    pub fn monic_family(&self, n_max: usize) -> Result<Vec<XPoly<S>>, AwError> {
        if n_max > self.max_degree() {
            return Err(AwError::usage(format!(
                "recurrence holds coefficients up to degree {}, asked for {}",
                self.max_degree(),
                n_max
            )));
        }
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(XPoly::one());
        for n in 0..n_max {
            let shift = XPoly::linear(S::one(), -self.a[n].clone());
            let mut next = &shift * &out[n];
            if n >= 1 {
                next = &next - &out[n - 1].scale(self.b_n(n));
            }
            out.push(next);
        }
        Ok(out)
    }

    /// A copy with `b_n` replaced by `b_n + delta`.
    pub fn perturbed_b(&self, n: usize, delta: &S) -> Self {
        let mut out = self.clone();
        out.b[n - 1] += delta.clone();
        out.provenance = Provenance::Perturbed;
        out
    }

    /// Converts every coefficient into another backend.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> RecurrenceCoeffs<T> {
        RecurrenceCoeffs {
            a: self.a.iter().map(&f).collect(),
            b: self.b.iter().map(&f).collect(),
            provenance: self.provenance,
        }
    }
}

/// Solves `x P_n = P_{n+1} + a_n P_n + b_n P_{n-1}` for `n = 0..=n_max` from
/// the series polynomials.
///
/// `a_n` comes from the `x^n` coefficient and `b_n` from the `x^{n-1}`
/// coefficient. In the exact backend the remaining coefficients must then
/// cancel, otherwise the result is an invariant violation. For admissible
/// parameters every `b_n` must be positive.
pub fn extract_recurrence<S: Scalar>(
    params: &AWParams<S>,
    n_max: usize,
) -> Result<RecurrenceCoeffs<S>, AwError> {
    if n_max < 1 {
        return Err(AwError::usage("recurrence extraction needs N >= 1"));
    }
    let family = aw_family(params, n_max + 1)?;
    let x = XPoly::x();
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max);
    for n in 0..=n_max {
        let below = if n == 0 {
            S::zero()
        } else {
            family[n].coeff(n - 1)
        };
        let a_n = below - family[n + 1].coeff(n);
        let mut rest = &(&(&x * &family[n]) - &family[n + 1]) - &family[n].scale(&a_n);
        if n >= 1 {
            let b_n = rest.coeff(n - 1);
            if params.is_admissible() && !b_n.is_positive() {
                return Err(AwError::PositivityViolation {
                    n,
                    value: b_n.to_f64(),
                });
            }
            rest = &rest - &family[n - 1].scale(&b_n);
            b.push(b_n);
        }
        if S::EXACT && !rest.is_zero() {
            return Err(AwError::invariant(format!(
                "three-term recurrence residual at n = {} is {:?}",
                n, rest
            )));
        }
        a.push(a_n);
    }
    Ok(RecurrenceCoeffs {
        a,
        b,
        provenance: Provenance::Extracted,
    })
}

/// `(a~_m, b~_m)` for `m = 0..n` of the continuous dual q-Hahn limit,
/// with `Q = q^m`:
///
/// ```text
/// a~_m = (ab Q + ac Q + bc Q + qQ - q - 1) / (2abc Q^2)
/// b~_m = (Q - 1)(bc Q - q)(ac Q - q)(ab Q - q) / (4 a^2 b^2 c^2 Q^4)
/// ```
///
/// The factor 4 in `b~_m` is what the `d -> oo` limit of the monic
/// Askey-Wilson polynomials produces.
pub fn cdqhahn_coeffs<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    ctx: &QContext<S>,
    n: usize,
) -> Result<RecurrenceCoeffs<S>, AwError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(AwError::usage(
            "continuous dual q-Hahn parameters must be nonzero",
        ));
    }
    let q = ctx.q();
    let (ab, ac, bc) = (
        a.clone() * b.clone(),
        a.clone() * c.clone(),
        b.clone() * c.clone(),
    );
    let abc = ab.clone() * c.clone();
    let mut at = Vec::with_capacity(n);
    let mut bt = Vec::with_capacity(n);
    for m in 0..n {
        let qm = q.powi(m as i64);
        let num =
            (ab.clone() + ac.clone() + bc.clone() + q.clone()) * qm.clone() - q.clone() - S::one();
        at.push(num / (S::two() * abc.clone() * qm.powi(2)));
        if m >= 1 {
            let num = (qm.clone() - S::one())
                * (bc.clone() * qm.clone() - q.clone())
                * (ac.clone() * qm.clone() - q.clone())
                * (ab.clone() * qm.clone() - q.clone());
            bt.push(num / (S::from_i64(4) * abc.powi(2) * qm.powi(4)));
        }
    }
    Ok(RecurrenceCoeffs {
        a: at,
        b: bt,
        provenance: Provenance::Explicit,
    })
}

/// The monic continuous dual q-Hahn limit `q_n(x; a, b, c | q)`.
pub fn cdqhahn_poly<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    ctx: &QContext<S>,
    n: usize,
) -> Result<XPoly<S>, AwError> {
    let coeffs = cdqhahn_coeffs(a, b, c, ctx, n)?;
    Ok(coeffs.monic_family(n)?.pop().unwrap_or_else(XPoly::one))
}
