use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_base::{Abs, SquareRootRem, UnsignedAbs};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::AwError;

/// Exact rational numbers.
pub type Rational = RBig;

/// A real field element. Implemented by exact rationals, `f64` and
/// [`BigFloat`].
///
/// Float backends never compare against a hidden epsilon: `is_zero` is an
/// exact test in every backend, and callers that need a tolerance pass it in.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// True when arithmetic is exact and equality is decidable.
    const EXACT: bool;
    /// Short backend name, used in reports.
    const NAME: &'static str;
    /// Significand bits (0 for exact).
    const PRECISION_BITS: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// The exact value of `self`; every backend is a subset of the
    /// rationals. Panics on non-finite floats.
    fn to_rational(&self) -> Rational;
    /// Square root, `None` when negative or (exact backend) irrational.
    fn sqrt(&self) -> Option<Self>;
    fn is_finite(&self) -> bool;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Parses `p/q`, an integer, or a decimal with optional exponent.
    fn parse(s: &str) -> Result<Self, AwError> {
        parse_rational(s).map(|r| Self::from_rational(&r))
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn two() -> Self {
        Self::from_i64(2)
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }
}

/// Parses a literal into an exact rational: `p/q`, `-17`, `0.25`, `1e-3`.
pub fn parse_rational(s: &str) -> Result<Rational, AwError> {
    let s = s.trim();
    let err = || AwError::Parse(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(err)?;
        let den = parse_decimal(den.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let magnitude = UBig::from_str_radix(&digits, 10).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = UBig::from(10u8);
    let mut value = if scale >= 0 {
        RBig::from(magnitude * ten.pow(scale as usize))
    } else {
        RBig::from_parts(IBig::from(magnitude), ten.pow((-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.numerator() < &IBig::ZERO {
        return None;
    }
    let num = r.numerator().clone().unsigned_abs();
    let (num_root, num_rem) = num.sqrt_rem();
    let (den_root, den_rem) = r.denominator().sqrt_rem();
    if num_rem.is_zero() && den_rem.is_zero() {
        Some(RBig::from_parts(IBig::from(num_root), den_root))
    } else {
        None
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";
    const PRECISION_BITS: usize = 0;

    fn zero() -> Self {
        RBig::ZERO
    }
    fn one() -> Self {
        RBig::ONE
    }
    fn from_i64(v: i64) -> Self {
        RBig::from(v)
    }
    fn from_f64(v: f64) -> Self {
        RBig::try_from(v).expect("finite f64")
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        RBig::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        RBig::to_f64(self).value()
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn abs(&self) -> Self {
        Abs::abs(self.clone())
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "f64";
    const PRECISION_BITS: usize = 53;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().value()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Rational {
        BigFloat::<64>::from_f64(*self).to_rational()
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| libm::sqrt(*self))
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn parse(s: &str) -> Result<Self, AwError> {
        match s.trim().parse::<f64>() {
            Ok(v) => Ok(v),
            Err(_) => parse_rational(s).map(|r| r.to_f64().value()),
        }
    }
}

/// Binary floating point with a fixed significand width of `BITS` bits,
/// rounded half-to-even after every operation.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat<const BITS: usize>(FBig<HalfEven>);

impl<const BITS: usize> BigFloat<BITS> {
    fn wrap(v: FBig<HalfEven>) -> Self {
        BigFloat(v.with_precision(BITS).value())
    }

    pub fn inner(&self) -> &FBig<HalfEven> {
        &self.0
    }
}

impl<const BITS: usize> fmt::Debug for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat<{}>({})", BITS, self.0)
    }
}

impl<const BITS: usize> fmt::Display for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

macro_rules! bigfloat_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:tt) => {
        impl<const BITS: usize> $trait for BigFloat<BITS> {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                BigFloat(self.0 $op rhs.0)
            }
        }
        impl<const BITS: usize> $assign_trait for BigFloat<BITS> {
            fn $assign_method(&mut self, rhs: Self) {
                self.0 = &self.0 $op rhs.0;
            }
        }
    };
}

bigfloat_binop!(Add, add, AddAssign, add_assign, +);
bigfloat_binop!(Sub, sub, SubAssign, sub_assign, -);
bigfloat_binop!(Mul, mul, MulAssign, mul_assign, *);

impl<const BITS: usize> Div for BigFloat<BITS> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        BigFloat(self.0 / rhs.0)
    }
}

impl<const BITS: usize> Neg for BigFloat<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        BigFloat(-self.0)
    }
}

impl<const BITS: usize> Scalar for BigFloat<BITS> {
    const EXACT: bool = false;
    const NAME: &'static str = "bigfloat";
    const PRECISION_BITS: usize = BITS;

    fn zero() -> Self {
        Self::wrap(FBig::ZERO)
    }
    fn one() -> Self {
        Self::wrap(FBig::ONE)
    }
    fn from_i64(v: i64) -> Self {
        Self::wrap(FBig::from(v))
    }
    fn from_f64(v: f64) -> Self {
        Self::wrap(FBig::try_from(v).expect("finite f64"))
    }
    fn from_rational(r: &Rational) -> Self {
        let num = Self::wrap(FBig::from(r.numerator().clone()));
        let den = Self::wrap(FBig::from(r.denominator().clone()));
        num / den
    }
    fn is_zero(&self) -> bool {
        self.0 == FBig::<HalfEven>::ZERO
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn to_rational(&self) -> Rational {
        let repr = self.0.repr();
        let sig = RBig::from(repr.significand().clone());
        let exp = repr.exponent();
        let pow = RBig::from(UBig::ONE << exp.unsigned_abs());
        if exp >= 0 {
            sig * pow
        } else {
            sig / pow
        }
    }
    fn sqrt(&self) -> Option<Self> {
        use dashu_base::SquareRoot;
        (self.0 >= FBig::<HalfEven>::ZERO).then(|| BigFloat(self.0.sqrt()))
    }
    fn is_finite(&self) -> bool {
        !self.0.repr().is_infinite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("6/7").unwrap(), Rational::from_ratio(6, 7));
        assert_eq!(
            parse_rational("-0.25").unwrap(),
            Rational::from_ratio(-1, 4)
        );
        assert_eq!(
            parse_rational("1e-3").unwrap(),
            Rational::from_ratio(1, 1000)
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn bigfloat_converts_back_exactly() {
        let third = BigFloat::<128>::from_ratio(1, 3);
        let back = third.to_rational();
        assert_eq!(BigFloat::<128>::from_rational(&back), third);
        assert_eq!(
            BigFloat::<64>::from_f64(-12.5).to_rational(),
            Rational::from_ratio(-25, 2)
        );
        assert!((Scalar::to_f64(&back) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(
            0.1f64.to_rational(),
            BigFloat::<64>::from_f64(0.1).to_rational()
        );
        assert_eq!(Scalar::to_f64(&0.1f64.to_rational()), 0.1);
    }
}
