//! Zeros of monic orthogonal families from their recurrence, the closed-form
//! bounds on the extreme zeros, the quadratic `G_{2,n}` and the reference table.

mod bounds;
mod sturm;
mod table1;

pub use bounds::{extreme_zero_bounds, g2_coefficients, g2_poly, g2_roots, BoundPair};
pub use sturm::{sturm_count_below, zeros_sturm, zeros_tridiagonal};
pub use table1::{table1, table1_recurrence, Table1Row, TABLE1_DEGREES, TABLE1_PRINTED};

use alloc::vec::Vec;

use crate::numerics::Scalar;

/// How a zero set was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMethod {
    SturmBisection,
    TridiagonalEigen,
}

/// The zeros of `P_n` in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet<S> {
    pub n: usize,
    pub values: Vec<S>,
    pub method: ZeroMethod,
}

impl<S: Scalar> ZeroSet<S> {
    pub fn smallest(&self) -> Option<&S> {
        self.values.first()
    }

    pub fn largest(&self) -> Option<&S> {
        self.values.last()
    }

    /// Exactly `n` values, strictly increasing.
    pub fn is_well_formed(&self) -> bool {
        self.values.len() == self.n && self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Every zero lies in the open interval `(-1, 1)`.
    pub fn inside_unit_interval(&self) -> bool {
        let one = S::one();
        self.values.iter().all(|v| *v > -one.clone() && *v < one)
    }

    /// Strict interlacing with the zeros of `P_{n-1}`: each zero of the
    /// lower degree sits strictly between two consecutive zeros of this one.
    pub fn interlaces(&self, lower: &ZeroSet<S>) -> bool {
        lower.values.len() + 1 == self.values.len()
            && lower
                .values
                .iter()
                .enumerate()
                .all(|(i, y)| self.values[i] < *y && *y < self.values[i + 1])
    }

    /// Largest pointwise distance to another zero set of the same size.
    pub fn max_distance(&self, other: &ZeroSet<S>) -> Option<f64> {
        (self.values.len() == other.values.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a.clone() - b.clone()).abs().to_f64())
                .fold(0.0, f64::max)
        })
    }
}
