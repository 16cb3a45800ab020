use alloc::format;
use alloc::vec;

use crate::error::AwError;
use crate::families::AWParams;
use crate::numerics::Scalar;
use crate::sympoly::XPoly;

/// The closed-form inner bounds on the extreme zeros of `P_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundPair<S> {
    pub n: usize,
    /// The smallest zero lies below this value.
    pub upper_on_smallest: S,
    /// The largest zero lies above this value.
    pub lower_on_largest: S,
    /// The discriminant `I_n`.
    pub i_n: S,
    /// `A = bc + bd + cd`.
    pub big_a: S,
    /// `B = b + c + d`.
    pub big_b: S,
    /// `C = bcd`.
    pub big_c: S,
}

/// Evaluates
///
/// ```text
/// (2(Q + 1)(Q(aA + C) - a - B)(aCQ - 1) -/+ sqrt(I_n)) / (8(aCQ^2 - 1)(aCQ - 1))
/// ```
///
/// with `Q = q^{n-1}`. Needs a backend with square roots of `I_n`.
pub fn extreme_zero_bounds<S: Scalar>(
    params: &AWParams<S>,
    n: usize,
) -> Result<BoundPair<S>, AwError> {
    if n < 2 {
        return Err(AwError::usage("extreme-zero bounds need n >= 2"));
    }
    let [a, b, c, d] = params.values();
    let one = S::one();
    let big_a = b.clone() * c.clone() + b.clone() * d.clone() + c.clone() * d.clone();
    let big_b = b.clone() + c.clone() + d.clone();
    let big_c = b.clone() * c.clone() * d.clone();
    let q = params.ctx().q();
    let m = n as i64 - 1;
    let qm = q.powi(m);
    let qm2 = q.powi(2 * m);
    let qm3 = q.powi(3 * m);
    let ac = a.clone() * big_c.clone();
    let (a2, b2, c2, d2) = (
        a.clone() * a.clone(),
        b.clone() * b.clone(),
        c.clone() * c.clone(),
        d.clone() * d.clone(),
    );

    let f1 = ac.clone() * qm2.clone() - one.clone();
    let f2 = ac.clone() * qm.clone() - one.clone();
    let den = S::from_i64(8) * f1.clone() * f2.clone();
    if den.is_zero() {
        return Err(AwError::singular(format!(
            "extreme-zero bounds at n = {}",
            n
        )));
    }
    let lin = qm.clone() * (a.clone() * big_a.clone() + big_c.clone()) - a.clone() - big_b.clone();

    let t0 = (-(qm3 * ac.clone()) - one.clone())
        * (ac.clone() - a.clone() * big_b.clone() - big_a.clone() + one.clone());
    let t2 = ((big_c.clone() * big_c.clone()
        + b2.clone() * c2.clone()
        + b2.clone() * d2.clone()
        + c2.clone() * d2.clone()
        + b.clone() * c.clone() * d.clone() * big_b.clone()
        - big_a.clone())
        * a2.clone()
        + big_a.clone() * (big_c.clone() - big_b.clone()) * a.clone()
        + big_c.clone() * big_c.clone()
        - big_c.clone() * big_b.clone())
        * qm2;
    let t1 = ((one.clone() - big_a.clone()) * a2
        - (big_a.clone() - one.clone()) * big_b.clone() * a.clone()
        - big_c.clone() * big_b.clone()
        + b2
        + big_a.clone()
        + c2
        + d2
        + one.clone())
        * qm.clone();
    let square = (qm.clone() + one.clone()) * lin.clone() * f2.clone();
    let i_n = -(S::from_i64(16) * f1 * f2.clone() * (t0 + t2 + t1))
        + S::from_i64(4) * square.clone() * square;
    if i_n < S::zero() {
        return Err(AwError::ComplexBounds {
            n,
            value: i_n.to_f64(),
        });
    }
    let root = i_n.sqrt().ok_or_else(|| AwError::IrrationalRoot {
        what: format!("I_{} = {}", n, i_n),
    })?;
    let num = S::two() * (qm + one) * lin * f2;
    Ok(BoundPair {
        n,
        upper_on_smallest: (num.clone() - root.clone()) / den.clone(),
        lower_on_largest: (num + root) / den,
        i_n,
        big_a,
        big_b,
        big_c,
    })
}

/// `[c0, c1, c2]` and the scale `4abcd (1 - q^n)(1 - q^{n-1})(abcd q^{2n} - 1) / (abcd q^{n-1} - 1)`
/// of `scale * G_{2,n}(x) = c2 x^2 + c1 x + c0`.
pub fn g2_coefficients<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<([S; 3], S), AwError> {
    let [a, b, c, d] = params.values();
    let one = S::one();
    let q = params.ctx().q();
    let qn = q.powi(n as i64);
    let abcd = params.abcd();
    let (a2, b2, c2, d2) = (
        a.clone() * a.clone(),
        b.clone() * b.clone(),
        c.clone() * c.clone(),
        d.clone() * d.clone(),
    );
    let pairs = a.clone() * (b.clone() + c.clone() + d.clone())
        + b.clone() * c.clone()
        + b.clone() * d.clone()
        + c.clone() * d.clone();
    let triples = a.clone()
        * (b.clone() * c.clone() + b.clone() * d.clone() + c.clone() * d.clone())
        + b.clone() * c.clone() * d.clone();
    let sum = a.clone() + b.clone() + c.clone() + d.clone();
    let bcd = b.clone() * c.clone() * d.clone();
    let s_bc = b.clone() * c.clone() + b.clone() * d.clone() + c.clone() * d.clone();
    let s_b = b.clone() + c.clone() + d.clone();

    let top = abcd.clone() * qn.clone() - one.clone();
    let lead =
        S::from_i64(4) * (abcd.clone() * qn.clone() * qn.clone() - one.clone()) * top.clone();
    let lin = -(S::two() * qn.clone() + S::two()) * (qn.clone() * triples - sum) * top;
    let quad_q2 = (b2.clone() * c2.clone() * d2.clone()
        + b2.clone() * c2.clone()
        + b2.clone() * c.clone() * d.clone()
        + b2.clone() * d2.clone()
        + b.clone() * c2.clone() * d.clone()
        + b.clone() * c.clone() * d2.clone()
        + c2.clone() * d2.clone()
        - s_bc.clone())
        * a2.clone()
        + s_bc.clone() * (bcd.clone() - s_b.clone()) * a.clone()
        + bcd.clone() * (bcd.clone() - s_b.clone());
    let quad_q1 = (one.clone() - s_bc.clone()) * a2
        - (s_bc - one.clone()) * s_b * a
        - b2.clone() * c.clone() * d.clone()
        - b.clone() * c2.clone() * d.clone()
        - b.clone() * c.clone() * d2.clone()
        + b2
        + b.clone() * c.clone()
        + b.clone() * d.clone()
        + c2
        + c.clone() * d.clone()
        + d2
        + one.clone();
    let constant = -((qn.powi(3) * abcd.clone() + one.clone())
        * (abcd.clone() - pairs + one.clone()))
        + quad_q2 * qn.clone() * qn.clone()
        + quad_q1 * qn.clone();

    let qn1 = qn.clone() / q.clone();
    let scale_den = abcd.clone() * qn1.clone() - one.clone();
    let scale = S::from_i64(4)
        * abcd.clone()
        * (one.clone() - qn.clone())
        * (one.clone() - qn1)
        * (abcd * qn.clone() * qn - one);
    if scale_den.is_zero() || scale.is_zero() {
        return Err(AwError::singular(format!("G_2,{} normalization", n)));
    }
    Ok(([constant, lin, lead], scale / scale_den))
}

/// `G_{2,n}(x)` itself.
pub fn g2_poly<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<XPoly<S>, AwError> {
    let ([c0, c1, c2], scale) = g2_coefficients(params, n)?;
    Ok(XPoly::from_coeffs(vec![c0, c1, c2]).scale(&scale.recip()))
}

/// The two real roots of `G_{2,n}`, smaller first.
pub fn g2_roots<S: Scalar>(params: &AWParams<S>, n: usize) -> Result<(S, S), AwError> {
    let ([c0, c1, c2], _) = g2_coefficients(params, n)?;
    if c2.is_zero() {
        return Err(AwError::singular(format!(
            "leading coefficient of G_2,{}",
            n
        )));
    }
    let disc = c1.clone() * c1.clone() - S::from_i64(4) * c2.clone() * c0;
    if disc < S::zero() {
        return Err(AwError::ComplexRoots {
            n,
            value: disc.to_f64(),
        });
    }
    let root = disc.sqrt().ok_or_else(|| AwError::IrrationalRoot {
        what: format!("discriminant of G_2,{}", n),
    })?;
    let two_c2 = S::two() * c2;
    let r1 = (-c1.clone() - root.clone()) / two_c2.clone();
    let r2 = (-c1 + root) / two_c2;
    Ok(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}
