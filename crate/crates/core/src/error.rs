use alloc::string::String;

use thiserror::Error;

/// Errors raised by the calculus kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AwError {
    /// Arguments that do not fit the operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// `abcd q^m = 1` for an index in the normalization `(abcd q^{n-1}; q)_n`.
    #[error("degenerate normalization at degree {n}: abcd*q^m = 1 for some m in [n-1, 2n-2]")]
    DegenerateNormalization { n: usize },

    /// A denominator of a closed form vanishes.
    #[error("singular denominator in {what}")]
    SingularDenominator { what: String },

    /// A recurrence coefficient `b_n` that should be positive is not.
    #[error("b_{n} = {value} is not positive")]
    PositivityViolation { n: usize, value: f64 },

    /// An identity that must hold exactly failed. This is a defect, not bad input.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// The discriminant `I_n` of the extreme-zero bounds is negative.
    #[error("I_{n} = {value} is negative, the bounds are complex")]
    ComplexBounds { n: usize, value: f64 },

    /// The quadratic `G_{2,n}` has no real roots.
    #[error("G_2,{n} has negative discriminant {value}")]
    ComplexRoots { n: usize, value: f64 },

    /// `q^{1/4}` (or another required root) is not representable in the backend.
    #[error("{what} has no exact square root in the rational backend")]
    IrrationalRoot { what: String },

    /// A floating-point evaluation overflowed or produced NaN.
    #[error("non-finite value in {what}; retry with a wider precision")]
    Precision { what: String },

    /// Bisection could not bracket a zero.
    #[error("could not bracket zero {index} of P_{n}: {detail}")]
    Bracket {
        n: usize,
        index: usize,
        detail: String,
    },

    /// A scalar literal could not be parsed.
    #[error("cannot parse scalar literal {0:?}")]
    Parse(String),
}

impl AwError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        AwError::Usage(msg.into())
    }

    pub(crate) fn singular(what: impl Into<String>) -> Self {
        AwError::SingularDenominator { what: what.into() }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        AwError::InvariantViolation(msg.into())
    }
}
