use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::numerics::Scalar;

/// A polynomial in `x = cos θ`, coefficients indexed by power of `x`.
///
/// Trailing (high-degree) coefficients that are exactly zero are stripped, so
/// the zero polynomial is the empty list and equality is structural.
#[derive(Clone, PartialEq)]
pub struct XPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> XPoly<S> {
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(S::one(), 1)
    }

    /// `c x^d`.
    pub fn monomial(c: S, d: usize) -> Self {
        let mut coeffs = vec![S::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    /// `c1 x + c0`.
    pub fn linear(c1: S, c0: S) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    /// The monic polynomial `prod (x - r)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a S>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| {
            &acc * &Self::linear(S::one(), -r.clone())
        })
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == S::one())
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x0: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x0.clone() + c.clone())
    }

    /// Largest coefficient magnitude, as `f64`. Zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// `self / leading coefficient`; the zero polynomial stays zero.
    pub fn to_monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone() / lc.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c.clone() * dc.clone();
            }
            rem[k + d] = S::zero();
            quot[k] = c;
        }
        rem.truncate(d);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Coefficients converted to `f64`.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(Scalar::to_f64).collect()
    }

    /// Maps every coefficient, possibly into another backend.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> XPoly<T> {
        XPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<S: Scalar> fmt::Debug for XPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})x", c)?,
                _ => write!(f, "({})x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &XPoly<S> {
    type Output = XPoly<S>;
    fn add(self, rhs: &XPoly<S>) -> XPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &XPoly<S> {
    type Output = XPoly<S>;
    fn sub(self, rhs: &XPoly<S>) -> XPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &XPoly<S> {
    type Output = XPoly<S>;
    fn mul(self, rhs: &XPoly<S>) -> XPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        XPoly::from_coeffs(out)
    }
}

impl<S: Scalar> Neg for &XPoly<S> {
    type Output = XPoly<S>;
    fn neg(self) -> XPoly<S> {
        XPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl<S: Scalar> $trait for XPoly<S> {
            type Output = XPoly<S>;
            fn $method(self, rhs: XPoly<S>) -> XPoly<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
