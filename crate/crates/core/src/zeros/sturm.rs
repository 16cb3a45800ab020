use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use super::{ZeroMethod, ZeroSet};
use crate::error::AwError;
use crate::families::RecurrenceCoeffs;
use crate::numerics::Scalar;

const MAX_BISECTIONS: usize = 4096;

fn check_positive<S: Scalar>(coeffs: &RecurrenceCoeffs<S>, n: usize) -> Result<(), AwError> {
    if n > coeffs.max_degree() {
        return Err(AwError::usage(format!(
            "recurrence holds coefficients up to degree {}, asked for {}",
            coeffs.max_degree(),
            n
        )));
    }
    for k in 1..n {
        if !coeffs.b_n(k).is_positive() {
            return Err(AwError::usage(format!(
                "b_{} = {} is not positive, zeros are not real and simple",
                k,
                coeffs.b_n(k)
            )));
        }
    }
    Ok(())
}

/// Number of zeros of `P_n` strictly below `x`, from the sign changes of
/// `P_0(x), ..., P_n(x)` (which count the zeros above `x`). A zero entry
/// takes the sign opposite to its predecessor.
pub fn sturm_count_below<S: Scalar>(coeffs: &RecurrenceCoeffs<S>, n: usize, x: &S) -> usize {
    let mut prev = S::zero();
    let mut cur = S::one();
    let mut cur_negative = false;
    let mut changes = 0;
    for k in 0..n {
        let mut next = (x.clone() - coeffs.a[k].clone()) * cur.clone();
        if k >= 1 {
            next -= coeffs.b_n(k).clone() * prev;
        }
        let next_negative = if next.is_zero() {
            !cur_negative
        } else {
            next < S::zero()
        };
        if next_negative != cur_negative {
            changes += 1;
        }
        prev = cur;
        cur = next;
        cur_negative = next_negative;
    }
    n - changes
}

/// Gershgorin interval of the Jacobi matrix, with `sqrt(b) <= (1 + b) / 2`
/// so no square root is needed.
fn gershgorin<S: Scalar>(coeffs: &RecurrenceCoeffs<S>, n: usize) -> (S, S) {
    let off = |k: usize| -> S {
        if k == 0 || k >= n {
            S::zero()
        } else {
            (S::one() + coeffs.b_n(k).clone()).half()
        }
    };
    let mut lo = coeffs.a[0].clone();
    let mut hi = coeffs.a[0].clone();
    for k in 0..n {
        let radius = off(k) + off(k + 1);
        let l = coeffs.a[k].clone() - radius.clone();
        let h = coeffs.a[k].clone() + radius;
        if l < lo {
            lo = l;
        }
        if h > hi {
            hi = h;
        }
    }
    let pad = S::one();
    (lo - pad.clone(), hi + pad)
}

/// All `n` zeros of `P_n` by bisection on the Sturm count, each bracketed to
/// width at most `tol`.
pub fn zeros_sturm<S: Scalar>(
    coeffs: &RecurrenceCoeffs<S>,
    n: usize,
    tol: &S,
) -> Result<ZeroSet<S>, AwError> {
    if n < 1 {
        return Err(AwError::usage("zeros need n >= 1"));
    }
    if !tol.is_positive() {
        return Err(AwError::usage("tolerance must be positive"));
    }
    check_positive(coeffs, n)?;
    let (lo, hi) = gershgorin(coeffs, n);
    let bracket = |index: usize, detail: &str| AwError::Bracket {
        n,
        index,
        detail: detail.into(),
    };
    if sturm_count_below(coeffs, n, &lo) != 0 || sturm_count_below(coeffs, n, &hi) != n {
        return Err(bracket(
            0,
            "Gershgorin interval does not contain every zero",
        ));
    }
    let mut values = Vec::with_capacity(n);
    for k in 1..=n {
        // find x with count_below(x) < k <= count_below(x') for x' just above
        let mut left = values.last().cloned().unwrap_or_else(|| lo.clone());
        if sturm_count_below(coeffs, n, &left) >= k {
            left = lo.clone();
        }
        let mut right = hi.clone();
        let mut steps = 0;
        while right.clone() - left.clone() > *tol {
            let mid = (left.clone() + right.clone()).half();
            if mid == left || mid == right {
                break;
            }
            if sturm_count_below(coeffs, n, &mid) >= k {
                right = mid;
            } else {
                left = mid;
            }
            steps += 1;
            if steps > MAX_BISECTIONS {
                return Err(bracket(k, "bisection did not converge"));
            }
        }
        let zero = (left + right).half();
        if !zero.is_finite() {
            return Err(bracket(k, "non-finite midpoint"));
        }
        values.push(zero);
    }
    Ok(ZeroSet {
        n,
        values,
        method: ZeroMethod::SturmBisection,
    })
}

/// The zeros as eigenvalues of the symmetric Jacobi matrix with diagonal
/// `a_k` and off-diagonal `sqrt(b_k)`, in double precision.
pub fn zeros_tridiagonal<S: Scalar>(
    coeffs: &RecurrenceCoeffs<S>,
    n: usize,
) -> Result<ZeroSet<f64>, AwError> {
    if n < 1 {
        return Err(AwError::usage("zeros need n >= 1"));
    }
    check_positive(coeffs, n)?;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = coeffs.a[k].to_f64();
        if k + 1 < n {
            let off = libm::sqrt(coeffs.b_n(k + 1).to_f64());
            m[(k, k + 1)] = off;
            m[(k + 1, k)] = off;
        }
    }
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(AwError::Precision {
            what: "Jacobi matrix eigenvalues".into(),
        });
    }
    values.sort_by(|a, b| a.total_cmp(b));
    Ok(ZeroSet {
        n,
        values,
        method: ZeroMethod::TridiagonalEigen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Provenance;

    fn chebyshev_like(n: usize) -> RecurrenceCoeffs<f64> {
        // monic Chebyshev of the second kind: a_k = 0, b_k = 1/4
        RecurrenceCoeffs {
            a: alloc::vec![0.0; n + 1],
            b: alloc::vec![0.25; n],
            provenance: Provenance::Explicit,
        }
    }

    #[test]
    fn degree_one_zero_is_a0() {
        let rec = RecurrenceCoeffs {
            a: alloc::vec![0.3, 0.0],
            b: alloc::vec![0.1],
            provenance: Provenance::Explicit,
        };
        let z = zeros_sturm(&rec, 1, &1e-14).unwrap();
        assert!((z.values[0] - 0.3).abs() < 1e-13);
    }

    #[test]
    fn chebyshev_second_kind_zeros() {
        let n = 9;
        let rec = chebyshev_like(n);
        let z = zeros_sturm(&rec, n, &1e-13).unwrap();
        let e = zeros_tridiagonal(&rec, n).unwrap();
        for (k, v) in z.values.iter().enumerate() {
            let exact = -libm::cos((k + 1) as f64 * core::f64::consts::PI / (n + 1) as f64);
            assert!((v - exact).abs() < 1e-12);
        }
        assert!(z.max_distance(&e).unwrap() < 1e-12);
        assert!(z.is_well_formed() && z.inside_unit_interval());
        let lower = zeros_sturm(&rec, n - 1, &1e-13).unwrap();
        assert!(z.interlaces(&lower));
    }

    #[test]
    fn zero_in_sequence_uses_opposite_sign() {
        // P_1 = x vanishes at 0: one zero below 0 + epsilon, none below 0
        let rec = RecurrenceCoeffs {
            a: alloc::vec![0.0, 0.0],
            b: alloc::vec![1.0],
            provenance: Provenance::Explicit,
        };
        assert_eq!(sturm_count_below(&rec, 1, &0.0), 0);
        assert_eq!(sturm_count_below(&rec, 1, &1e-9), 1);
        // P_2 = x^2 - 1 at x = 0: signs +, 0 -> -, -1 -> 1 change pair
        assert_eq!(sturm_count_below(&rec, 2, &0.0), 1);
    }

    #[test]
    fn nonpositive_b_is_rejected() {
        let rec = RecurrenceCoeffs {
            a: alloc::vec![0.0; 3],
            b: alloc::vec![0.5, -0.1],
            provenance: Provenance::Explicit,
        };
        assert!(matches!(
            zeros_sturm(&rec, 3, &1e-10),
            Err(AwError::Usage(_))
        ));
        assert!(matches!(zeros_tridiagonal(&rec, 3), Err(AwError::Usage(_))));
    }
}
