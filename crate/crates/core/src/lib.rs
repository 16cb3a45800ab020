//! Exact and floating-point calculus for Askey-Wilson polynomials.
//!
//! The crate builds the polynomials `P_n(x; a, b, c, d | q)` in `x = cos θ`,
//! applies the Askey-Wilson divided-difference operator `D_q` and the
//! averaging operator `S_q` through the Laurent lift `x = (z + 1/z) / 2`, and
//! checks the structure relation, the divided-difference equation and the
//! extreme-zero bounds of the family.
//!
//! All arithmetic is generic over [`Scalar`]: exact rationals ([`Rational`]),
//! `f64`, and fixed-width big floats ([`BigFloat`]). With the exact backend
//! every identity check returns a residual polynomial that must be
//! structurally zero.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod awcalc;
pub mod error;
pub mod families;
pub mod numerics;
pub mod structure;
pub mod sympoly;
pub mod zeros;

pub use error::AwError;
pub use families::{AWParams, RecurrenceCoeffs};
pub use numerics::{q_pochhammer, BigFloat, QContext, Rational, Scalar};
pub use sympoly::{Laurent, SymLaurent, XPoly};
