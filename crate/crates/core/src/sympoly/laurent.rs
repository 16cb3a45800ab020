use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use crate::error::AwError;
use crate::numerics::Scalar;

/// A Laurent polynomial `sum_k c_k z^k` with finite support.
///
/// Stored densely from the lowest nonzero exponent; zero coefficients at both
/// ends are stripped so equality is structural.
#[derive(Clone, PartialEq)]
pub struct Laurent<S> {
    low: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> Laurent<S> {
    pub fn zero() -> Self {
        Laurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    /// Dense coefficients starting at exponent `low`.
    pub fn from_dense(low: i64, coeffs: Vec<S>) -> Self {
        let mut out = Laurent { low, coeffs };
        out.normalize();
        out
    }

    /// Sums `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let terms: Vec<(i64, S)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap_or(low);
        let mut coeffs = vec![S::zero(); (high - low + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `z^k`.
    pub fn coefficient(&self, k: i64) -> S {
        let idx = k - self.low;
        if idx < 0 {
            return S::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_dense(
            self.low,
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        )
    }

    /// The substitution `z -> lambda z`: coefficient `k` picks up `lambda^k`.
    pub fn dilate(&self, lambda: &S) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut factor = lambda.powi(self.low);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * factor.clone());
            factor *= lambda.clone();
        }
        Self::from_dense(self.low, coeffs)
    }

    /// Exact check of `c_k = c_{-k}`.
    pub fn is_symmetric(&self) -> bool {
        match (self.min_exponent(), self.max_exponent()) {
            (None, _) | (_, None) => true,
            (Some(lo), Some(hi)) => {
                lo == -hi && (0..=hi).all(|k| self.coefficient(k) == self.coefficient(-k))
            }
        }
    }

    /// Evaluates at a nonzero point.
    pub fn evaluate(&self, z: &S) -> S {
        let mut acc = S::zero();
        let mut power = z.powi(self.low);
        for c in &self.coeffs {
            acc += c.clone() * power.clone();
            power *= z.clone();
        }
        acc
    }

    /// Largest coefficient magnitude as `f64`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        if self.coeffs.is_empty() && rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let lo = [self.min_exponent(), rhs.min_exponent()]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or(0);
        let hi = [self.max_exponent(), rhs.max_exponent()]
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(0);
        let coeffs = (lo..=hi)
            .map(|k| {
                let b = rhs.coefficient(k);
                self.coefficient(k) + if negate { -b } else { b }
            })
            .collect();
        Self::from_dense(lo, coeffs)
    }
}

impl<S: Scalar> fmt::Debug for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

impl<S: Scalar> Add for &Laurent<S> {
    type Output = Laurent<S>;
    fn add(self, rhs: &Laurent<S>) -> Laurent<S> {
        self.combine(rhs, false)
    }
}

impl<S: Scalar> Sub for &Laurent<S> {
    type Output = Laurent<S>;
    fn sub(self, rhs: &Laurent<S>) -> Laurent<S> {
        self.combine(rhs, true)
    }
}

impl<S: Scalar> Mul for &Laurent<S> {
    type Output = Laurent<S>;
    fn mul(self, rhs: &Laurent<S>) -> Laurent<S> {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Laurent::from_dense(self.low + rhs.low, out)
    }
}

/// A Laurent polynomial invariant under `z <-> 1/z`: the lift of a
/// polynomial in `x = (z + 1/z) / 2`. The full support is stored.
#[derive(Clone, PartialEq)]
pub struct SymLaurent<S>(Laurent<S>);

impl<S: Scalar> SymLaurent<S> {
    /// Checks the symmetry exactly.
    pub fn new(l: Laurent<S>) -> Result<Self, AwError> {
        if l.is_symmetric() {
            Ok(SymLaurent(l))
        } else {
            Err(AwError::invariant(format!(
                "Laurent polynomial is not symmetric under z <-> 1/z: {:?}",
                l
            )))
        }
    }

    /// Builds `sum_k h_k (z^k + z^-k)` (with `h_0` counted once) from the
    /// coefficients of `z^0, z^1, ...`.
    pub fn from_nonnegative(half: &[S]) -> Self {
        if half.is_empty() {
            return SymLaurent(Laurent::zero());
        }
        let top = half.len() as i64 - 1;
        let coeffs = (-top..=top)
            .map(|k| half[k.unsigned_abs() as usize].clone())
            .collect();
        SymLaurent(Laurent::from_dense(-top, coeffs))
    }

    pub fn as_laurent(&self) -> &Laurent<S> {
        &self.0
    }

    pub fn into_laurent(self) -> Laurent<S> {
        self.0
    }

    pub fn coefficient(&self, k: i64) -> S {
        self.0.coefficient(k)
    }

    /// Highest exponent, equal to the degree of the underlying polynomial.
    pub fn top_exponent(&self) -> Option<i64> {
        self.0.max_exponent()
    }
}

impl<S: Scalar> fmt::Debug for SymLaurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl<S: Scalar> Mul for &SymLaurent<S> {
    type Output = SymLaurent<S>;
    fn mul(self, rhs: &SymLaurent<S>) -> SymLaurent<S> {
        SymLaurent(&self.0 * &rhs.0)
    }
}

impl<S: Scalar> Add for &SymLaurent<S> {
    type Output = SymLaurent<S>;
    fn add(self, rhs: &SymLaurent<S>) -> SymLaurent<S> {
        SymLaurent(&self.0 + &rhs.0)
    }
}
