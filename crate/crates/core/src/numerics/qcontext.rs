use alloc::string::ToString;
use alloc::vec::Vec;

use super::Scalar;
use crate::error::AwError;
use crate::sympoly::XPoly;

/// The base `q` together with its roots `q^{1/2}` and `q^{1/4} = u`.
///
/// The exact backend is parameterized by `u`, so every power `q^{k/4}` that
/// the operators and the `F_k` basis need stays rational. A context built
/// from a rational `q^{1/2}` whose square root is irrational has no `u`;
/// everything except the `F_k` basis still works with it.
#[derive(Clone, Debug, PartialEq)]
pub struct QContext<S> {
    u: Option<S>,
    sqrt_q: S,
    q: S,
    alpha: S,
}

/// `gamma_0..=gamma_N` and `alpha_0..=alpha_N`, generated by the
/// second-order recurrences instead of the closed forms.
#[derive(Clone, Debug, PartialEq)]
pub struct QSequences<S> {
    pub gamma: Vec<S>,
    pub alpha: Vec<S>,
}

impl<S: Scalar> QContext<S> {
    /// Builds the context from `u = q^{1/4} > 0`, `u != 1`.
    pub fn from_u(u: S) -> Result<Self, AwError> {
        if !u.is_positive() {
            return Err(AwError::usage("u = q^(1/4) must be positive"));
        }
        let sqrt_q = u.clone() * u.clone();
        let mut ctx = Self::from_sqrt_q(sqrt_q)?;
        ctx.u = Some(u);
        Ok(ctx)
    }

    /// Builds the context from `q^{1/2} > 0`, `q != 1`; `u` is kept when its
    /// square root is representable.
    pub fn from_sqrt_q(sqrt_q: S) -> Result<Self, AwError> {
        if !sqrt_q.is_positive() {
            return Err(AwError::usage("q^(1/2) must be positive"));
        }
        if sqrt_q == S::one() {
            return Err(AwError::usage("q = 1 is not allowed"));
        }
        let u = sqrt_q.sqrt();
        let q = sqrt_q.clone() * sqrt_q.clone();
        let alpha = (sqrt_q.clone() + sqrt_q.recip()).half();
        Ok(QContext {
            u,
            sqrt_q,
            q,
            alpha,
        })
    }

    /// Builds the context from `q`. The exact backend refuses a `q` whose
    /// square root is irrational; use [`QContext::require_u`] when the
    /// fourth root is needed too.
    pub fn from_q(q: S) -> Result<Self, AwError> {
        if !q.is_positive() {
            return Err(AwError::usage("q must be positive"));
        }
        let sqrt_q = q.sqrt().ok_or_else(|| AwError::IrrationalRoot {
            what: q.to_string(),
        })?;
        Self::from_sqrt_q(sqrt_q)
    }

    pub fn u(&self) -> Option<&S> {
        self.u.as_ref()
    }

    /// `u = q^{1/4}`, or an error when it is not representable.
    pub fn require_u(&self) -> Result<&S, AwError> {
        self.u.as_ref().ok_or_else(|| AwError::IrrationalRoot {
            what: self.sqrt_q.to_string(),
        })
    }

    pub fn sqrt_q(&self) -> &S {
        &self.sqrt_q
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    /// `alpha = alpha_1 = (q^{1/2} + q^{-1/2}) / 2`.
    pub fn alpha(&self) -> &S {
        &self.alpha
    }

    /// False for `q > 1`, which is only meaningful for limit checks.
    pub fn q_in_unit_interval(&self) -> bool {
        self.q < S::one()
    }

    /// `q^{n/2}`.
    pub fn half_power(&self, n: i64) -> S {
        self.sqrt_q.powi(n)
    }

    /// `q^{n/4}`.
    pub fn quarter_power(&self, n: i64) -> Result<S, AwError> {
        Ok(self.require_u()?.powi(n))
    }

    /// `gamma_n = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`.
    pub fn gamma(&self, n: i64) -> S {
        let s = &self.sqrt_q;
        (s.powi(n) - s.powi(-n)) / (s.clone() - s.recip())
    }

    /// `alpha_n = (q^{n/2} + q^{-n/2}) / 2`.
    pub fn alpha_n(&self, n: i64) -> S {
        (self.sqrt_q.powi(n) + self.sqrt_q.powi(-n)).half()
    }

    pub fn gamma_alpha(&self, n: usize) -> (S, S) {
        (self.gamma(n as i64), self.alpha_n(n as i64))
    }

    /// Both sequences up to index `n_max`, from `gamma_{n+1} = 2 alpha gamma_n - gamma_{n-1}`
    /// and the same recurrence for `alpha_n`.
    pub fn sequences(&self, n_max: usize) -> QSequences<S> {
        let two_alpha = S::two() * self.alpha.clone();
        let mut gamma = Vec::with_capacity(n_max + 1);
        let mut alpha = Vec::with_capacity(n_max + 1);
        gamma.push(S::zero());
        alpha.push(S::one());
        if n_max >= 1 {
            gamma.push(S::one());
            alpha.push(self.alpha.clone());
        }
        for n in 1..n_max {
            gamma.push(two_alpha.clone() * gamma[n].clone() - gamma[n - 1].clone());
            alpha.push(two_alpha.clone() * alpha[n].clone() - alpha[n - 1].clone());
        }
        QSequences { gamma, alpha }
    }

    /// `U_1(x) = (alpha^2 - 1) x` and `U_2(x) = (alpha^2 - 1)(x^2 - 1)`.
    pub fn u_coefficient_polys(&self) -> (XPoly<S>, XPoly<S>) {
        let c = self.alpha.clone() * self.alpha.clone() - S::one();
        let u1 = XPoly::monomial(c.clone(), 1);
        let u2 = XPoly::from_coeffs(alloc::vec![-c.clone(), S::zero(), c]);
        (u1, u2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn ctx_quarter() -> QContext<Rational> {
        // q = 1/16, u = 1/2
        QContext::from_u(r(1, 2)).unwrap()
    }

    #[test]
    fn index_zero() {
        let (g, a) = ctx_quarter().gamma_alpha(0);
        assert!(g.is_zero());
        assert_eq!(a, r(1, 1));
    }

    #[test]
    fn q_quarter_values() {
        let ctx = QContext::from_q(r(1, 4)).unwrap();
        assert_eq!(ctx.gamma_alpha(1), (r(1, 1), r(5, 4)));
        assert_eq!(ctx.gamma_alpha(2), (r(5, 2), r(17, 8)));
        let (g1, a1) = ctx.gamma_alpha(1);
        assert_eq!(ctx.gamma(2), a1.clone() + a1 * g1);
    }

    #[test]
    fn irrational_roots() {
        assert!(matches!(
            QContext::from_q(r(1, 2)),
            Err(AwError::IrrationalRoot { .. })
        ));
        let quarter = QContext::from_q(r(1, 4)).unwrap();
        assert!(quarter.u().is_none());
        assert!(matches!(
            quarter.require_u(),
            Err(AwError::IrrationalRoot { .. })
        ));
        let ctx = QContext::from_q(r(1, 81)).unwrap();
        assert_eq!(ctx.u(), Some(&r(1, 3)));
        let f = QContext::from_q(0.25f64).unwrap();
        assert!((f.alpha() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_and_unit() {
        assert!(QContext::from_u(r(0, 1)).is_err());
        assert!(QContext::from_u(r(-1, 2)).is_err());
        assert!(QContext::from_u(r(1, 1)).is_err());
        assert!(!QContext::from_u(r(3, 2)).unwrap().q_in_unit_interval());
    }

    #[test]
    fn sequence_relations_hold_exactly() {
        for u in [r(1, 2), r(1, 3), r(2, 5), r(5, 7)] {
            let ctx = QContext::from_u(u).unwrap();
            let seq = ctx.sequences(16);
            let s = ctx.sqrt_q().clone();
            for n in 0..=16usize {
                let (g, a) = ctx.gamma_alpha(n);
                assert_eq!(seq.gamma[n], g);
                assert_eq!(seq.alpha[n], a);
                // 2 alpha_n gamma_n (s - 1/s) = q^n - q^-n
                let lhs = r(2, 1) * a.clone() * g.clone() * (s.clone() - s.recip());
                assert_eq!(lhs, ctx.q().powi(n as i64) - ctx.q().powi(-(n as i64)));
            }
            for n in 1..16i64 {
                let rec = ctx.gamma(n + 1) - r(2, 1) * ctx.alpha().clone() * ctx.gamma(n)
                    + ctx.gamma(n - 1);
                assert!(rec.is_zero());
                let mixed = ctx.gamma(n + 1) - ctx.alpha_n(n) - ctx.alpha().clone() * ctx.gamma(n);
                assert!(mixed.is_zero());
            }
        }
    }

    #[test]
    fn u_polys() {
        let (u1, u2) = ctx_quarter().u_coefficient_polys();
        assert!(u2.evaluate(&r(1, 1)).is_zero());
        assert!(u1.evaluate(&r(0, 1)).is_zero());

        let ctx = QContext::from_q(r(1, 4)).unwrap();
        let (u1, u2) = ctx.u_coefficient_polys();
        assert_eq!(u1, XPoly::from_coeffs(alloc::vec![r(0, 1), r(9, 16)]));
        assert_eq!(
            u2,
            XPoly::from_coeffs(alloc::vec![r(-9, 16), r(0, 1), r(9, 16)])
        );
    }
}
