use alloc::format;

use crate::awcalc::dq2;
use crate::error::AwError;
use crate::families::{aw_monic, AWParams};
use crate::numerics::Scalar;
use crate::sympoly::XPoly;

use super::pi_factored;

/// Which parameter plays the first role in `k_n`, and is multiplied by `q`
/// in the matching contiguous relation.
///
/// The orders are `(a,b,c,d)`, `(b,a,c,d)`, `(c,b,a,d)` and `(d,b,c,a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    A,
    B,
    C,
    D,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::A, Slot::B, Slot::C, Slot::D];

    fn order(self) -> [usize; 4] {
        match self {
            Slot::A => [0, 1, 2, 3],
            Slot::B => [1, 0, 2, 3],
            Slot::C => [2, 1, 0, 3],
            Slot::D => [3, 1, 2, 0],
        }
    }

    fn index(self) -> usize {
        self.order()[0]
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "c", "d"][self.index()]
    }
}

/// `k_n` for the parameter order `(e1, e2, e3, e4)`:
///
/// ```text
/// k_n = -(1 - e1e2 q^n)(1 - e1e3 q^n)(1 - e1e4 q^n)(1 - E q^{n-1})
///       / (2 e1 (1 - E q^{2n-1})(1 - E q^{2n})),   E = e1e2e3e4
/// ```
pub fn k_coefficient<S: Scalar>(e: [&S; 4], q: &S, n: i64) -> Result<S, AwError> {
    let one = S::one();
    let big = e[0].clone() * e[1].clone() * e[2].clone() * e[3].clone();
    let qn = q.powi(n);
    let den = S::two()
        * e[0].clone()
        * (one.clone() - big.clone() * q.powi(2 * n - 1))
        * (one.clone() - big.clone() * q.powi(2 * n));
    if den.is_zero() {
        return Err(AwError::singular(format!("k_{}", n)));
    }
    let num = (one.clone() - e[0].clone() * e[1].clone() * qn.clone())
        * (one.clone() - e[0].clone() * e[2].clone() * qn.clone())
        * (one.clone() - e[0].clone() * e[3].clone() * qn)
        * (one - big * q.powi(n - 1));
    Ok(-num / den)
}

/// `k_n` of `params` in the order selected by `slot`.
pub fn contiguous_k<S: Scalar>(params: &AWParams<S>, n: i64, slot: Slot) -> Result<S, AwError> {
    let v = params.values();
    let o = slot.order();
    k_coefficient(
        [&v[o[0]], &v[o[1]], &v[o[2]], &v[o[3]]],
        params.ctx().q(),
        n,
    )
}

/// Residual of
/// `(x - (e + 1/e)/2) P_n(.., eq, ..) = P_{n+1} + k_n P_n`
/// where `e` is the parameter in `slot`.
pub fn verify_contiguous<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
    slot: Slot,
) -> Result<XPoly<S>, AwError> {
    let q = params.ctx().q().clone();
    let one = S::one();
    let mut factors = [&one, &one, &one, &one];
    factors[slot.index()] = &q;
    let raised = params.scaled(factors)?;
    let e = params.values()[slot.index()].clone();
    if e.is_zero() {
        return Err(AwError::usage(format!(
            "parameter {} must be nonzero",
            slot.name()
        )));
    }
    let shift = XPoly::linear(S::one(), -(e.clone() + e.recip()).half());
    let lhs = &shift * &aw_monic(&raised, n)?;
    let k = contiguous_k(params, n as i64, slot)?;
    let p_n = aw_monic(params, n)?;
    Ok(&(&lhs - &aw_monic(params, n + 1)?) - &p_n.scale(&k))
}

/// The five coefficients `a_{n,n-2}, ..., a_{n,n+2}` of
/// `pi D_q^2 P_n = sum_j a_{n,n+j} P_{n+j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureCoeffs<S> {
    pub n: usize,
    /// `band[j + 2] = a_{n,n+j}`.
    pub band: [S; 5],
}

/// The band from products of contiguous coefficients, scaled by
/// `a_{n,n+2} = 16abcd gamma_n gamma_{n-1}`.
pub fn structure_coefficients<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
) -> Result<StructureCoeffs<S>, AwError> {
    if n < 2 {
        return Err(AwError::usage("structure coefficients need n >= 2"));
    }
    let ctx = params.ctx();
    let q = ctx.q().clone();
    let [a, b, c, d] = params.values();
    let (bq, cq, dq) = (
        b.clone() * q.clone(),
        c.clone() * q.clone(),
        d.clone() * q.clone(),
    );
    let m = n as i64;
    let k1 = |i: i64| k_coefficient([&a, &bq, &cq, &dq], &q, i);
    let k2 = |i: i64| k_coefficient([&b, &a, &cq, &dq], &q, i);
    let k3 = |i: i64| k_coefficient([&c, &b, &a, &dq], &q, i);
    let k4 = |i: i64| k_coefficient([&d, &b, &c, &a], &q, i);

    let top = S::from_i64(16) * params.abcd() * ctx.gamma(m) * ctx.gamma(m - 1);
    let k1_0 = k1(m - 2)?;
    let (k2_1, k2_0) = (k2(m - 1)?, k2(m - 2)?);
    let (k3_2, k3_1, k3_0) = (k3(m)?, k3(m - 1)?, k3(m - 2)?);
    let (k4_3, k4_2, k4_1, k4_0) = (k4(m + 1)?, k4(m)?, k4(m - 1)?, k4(m - 2)?);

    let s12 = k1_0.clone() + k2_1.clone();
    let s123 = s12.clone() + k3_2.clone();
    let p12 = k1_0.clone() * k2_0.clone();
    let p123 = p12.clone() * k3_0.clone();

    let plus2 = top.clone();
    let plus1 = top.clone() * (s123.clone() + k4_3);
    let zero = top.clone() * (p12.clone() + k3_1.clone() * s12.clone() + k4_2 * s123);
    let minus1 = top.clone() * (p123.clone() + k4_1.clone() * p12 + k4_1 * k3_1 * s12);
    let minus2 = top * p123 * k4_0;
    Ok(StructureCoeffs {
        n,
        band: [minus2, minus1, zero, plus1, plus2],
    })
}

/// `pi D_q^2 P_n - sum_j a_{n,n+j} P_{n+j}` with the band from
/// [`structure_coefficients`].
pub fn verify_structure_relation<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
) -> Result<XPoly<S>, AwError> {
    let coeffs = structure_coefficients(params, n)?;
    let lhs = &pi_factored(params) * &dq2(params.ctx(), &aw_monic(params, n)?);
    let mut rhs = XPoly::zero();
    for (j, a_nj) in coeffs.band.iter().enumerate() {
        rhs = &rhs + &aw_monic(params, n + j - 2)?.scale(a_nj);
    }
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{QContext, Rational};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn params() -> AWParams<Rational> {
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        AWParams::new(r(1, 2), r(1, 3), r(1, 5), r(1, 7), ctx).unwrap()
    }

    #[test]
    fn k0_closed_form() {
        let p = params();
        let [a, b, c, d] = p.values();
        let one = r(1, 1);
        let expected = -((one.clone() - a.clone() * b)
            * (one.clone() - a.clone() * c)
            * (one.clone() - a.clone() * d))
            / (r(2, 1) * a * (one - p.abcd()));
        assert_eq!(contiguous_k(&p, 0, Slot::A).unwrap(), expected);
    }

    #[test]
    fn k_symmetric_in_trailing_slots() {
        let p = params();
        let swapped = p.permuted([0, 2, 1, 3]).unwrap();
        for n in 0..4 {
            assert_eq!(
                contiguous_k(&p, n, Slot::A).unwrap(),
                contiguous_k(&swapped, n, Slot::A).unwrap()
            );
        }
    }

    #[test]
    fn singular_k_is_reported() {
        // abcd = 1 kills 1 - abcd q^{2n} at n = 0
        let ctx = QContext::from_u(r(1, 2)).unwrap();
        let p = AWParams::new(r(2, 1), r(1, 2), r(3, 1), r(1, 3), ctx).unwrap();
        assert!(matches!(
            contiguous_k(&p, 0, Slot::A),
            Err(AwError::SingularDenominator { .. })
        ));
    }

    #[test]
    fn contiguous_relations_hold() {
        let p = params();
        for slot in Slot::ALL {
            for n in 0..=3 {
                assert!(
                    verify_contiguous(&p, n, slot).unwrap().is_zero(),
                    "{:?} n = {}",
                    slot,
                    n
                );
            }
        }
    }

    #[test]
    fn structure_relation_holds() {
        let p = params();
        for n in 2..=5 {
            assert!(
                verify_structure_relation(&p, n).unwrap().is_zero(),
                "n = {}",
                n
            );
        }
        let c = structure_coefficients(&p, 3).unwrap();
        let ctx = p.ctx();
        assert_eq!(c.band[4], r(16, 1) * p.abcd() * ctx.gamma(3) * ctx.gamma(2));
        assert!(!c.band[0].is_zero());
        assert!(structure_coefficients(&p, 1).is_err());
    }
}
