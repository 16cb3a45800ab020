//! Scalar backends, q-shifted factorials and the lattice sequences
//! `alpha_n`, `gamma_n`.

mod pochhammer;
mod qcontext;
mod scalar;

pub use pochhammer::{q_pochhammer, q_pochhammer_range};
pub use qcontext::{QContext, QSequences};
pub use scalar::{parse_rational, BigFloat, Rational, Scalar};
