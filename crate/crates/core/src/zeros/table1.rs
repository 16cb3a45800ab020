use alloc::vec::Vec;

use super::{extreme_zero_bounds, zeros_sturm};
use crate::error::AwError;
use crate::families::{extract_recurrence, AWParams, RecurrenceCoeffs};
use crate::numerics::{QContext, Rational, Scalar};

/// The degrees tabulated.
pub const TABLE1_DEGREES: [usize; 3] = [7, 9, 12];

/// Reference values per degree: smallest zero, upper bound on it, lower
/// bound on the largest zero, largest zero.
pub const TABLE1_PRINTED: [[f64; 4]; 3] = [
    [-0.864348856, 0.33690627, 0.948809497, 0.981913401],
    [-0.922505234, 0.336904827, 0.948809477, 0.986122226],
    [-0.95879261, 0.336904809, 0.948809477, 0.990012586],
];

/// One column of the table.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row<S> {
    pub n: usize,
    pub smallest_zero: S,
    pub upper_bound: S,
    pub lower_bound: S,
    pub largest_zero: S,
}

impl<S: Scalar> Table1Row<S> {
    /// `[smallest, upper, lower, largest]` as `f64`.
    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.smallest_zero.to_f64(),
            self.upper_bound.to_f64(),
            self.lower_bound.to_f64(),
            self.largest_zero.to_f64(),
        ]
    }
}

fn table1_params<S: Scalar>() -> Result<AWParams<S>, AwError> {
    let ctx = QContext::from_q(S::from_ratio(1, 9))?;
    AWParams::new(
        S::from_ratio(6, 7),
        S::from_ratio(5, 7),
        S::from_ratio(4, 7),
        S::from_ratio(3, 7),
        ctx,
    )
}

/// Exact recurrence coefficients for `(a, b, c, d, q) = (6/7, 5/7, 4/7, 3/7, 1/9)`
/// up to the largest tabulated degree. The series cancels heavily at
/// `q = 1/9`, so it is only ever summed exactly.
pub fn table1_recurrence() -> Result<RecurrenceCoeffs<Rational>, AwError> {
    extract_recurrence(&table1_params::<Rational>()?, TABLE1_DEGREES[2])
}

/// Recomputes the table in backend `S`, bisecting zeros to width `tol`.
pub fn table1<S: Scalar>(tol: &S) -> Result<Vec<Table1Row<S>>, AwError> {
    let rec = table1_recurrence()?.map(S::from_rational);
    let params = table1_params::<S>()?;
    TABLE1_DEGREES
        .iter()
        .map(|&n| {
            let zeros = zeros_sturm(&rec, n, tol)?;
            let bounds = extreme_zero_bounds(&params, n)?;
            Ok(Table1Row {
                n,
                smallest_zero: zeros.values[0].clone(),
                upper_bound: bounds.upper_on_smallest,
                lower_bound: bounds.lower_on_largest,
                largest_zero: zeros.values[n - 1].clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::BigFloat;
    use crate::zeros::g2_roots;

    #[test]
    fn reproduces_printed_values() {
        let rows = table1::<BigFloat<128>>(&BigFloat::from_f64(1e-20)).unwrap();
        for (row, printed) in rows.iter().zip(TABLE1_PRINTED) {
            for (got, want) in row.to_f64().iter().zip(printed) {
                assert!(
                    (got - want).abs() <= 1e-7,
                    "n = {}: {} vs {}",
                    row.n,
                    got,
                    want
                );
            }
        }
    }

    #[test]
    fn bounds_are_roots_of_the_previous_quadratic() {
        let params = table1_params::<f64>().unwrap();
        for n in TABLE1_DEGREES {
            let b = extreme_zero_bounds(&params, n).unwrap();
            let (lo, hi) = g2_roots(&params, n - 1).unwrap();
            assert!((b.upper_on_smallest - lo).abs() <= 1e-8 * lo.abs());
            assert!((b.lower_on_largest - hi).abs() <= 1e-8 * hi.abs());
        }
    }
}
