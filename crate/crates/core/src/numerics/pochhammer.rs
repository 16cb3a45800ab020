use super::Scalar;

/// The q-shifted factorial `(a; q)_k = prod_{j=0}^{k-1} (1 - a q^j)`.
pub fn q_pochhammer<S: Scalar>(a: &S, q: &S, k: usize) -> S {
    q_pochhammer_range(a, q, 0, k)
}

/// `prod_{j=from}^{to-1} (1 - a q^j)`, i.e. `(a; q)_to / (a; q)_from` without
/// the division. Empty ranges give 1.
pub fn q_pochhammer_range<S: Scalar>(a: &S, q: &S, from: usize, to: usize) -> S {
    let mut acc = S::one();
    if from >= to {
        return acc;
    }
    let mut term = a.clone() * q.powi(from as i64);
    for _ in from..to {
        acc *= S::one() - term.clone();
        term *= q.clone();
    }
    acc
}
