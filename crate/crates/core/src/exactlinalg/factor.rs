use super::{inverse, IndependentRows, LinalgError, RatMatrix};
use crate::rational::Rational;
use num::Zero;

/// Exact `M = S D S^T` with `S` unit lower triangular and `D` diagonal.
///
/// Fails with [`LinalgError::PivotBreakdown`] at the first vanishing pivot that
/// would have to be divided by. A zero final pivot is returned as is.
pub fn symmetric_factor(m: &RatMatrix) -> Result<(RatMatrix, RatMatrix), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = m.rows();
    let mut s = RatMatrix::identity(n);
    let mut d = vec![Rational::zero(); n];
    for j in 0..n {
        let mut pivot = m.get(j, j).clone();
        for k in 0..j {
            if !s.get(j, k).is_zero() {
                pivot -= s.get(j, k) * s.get(j, k) * &d[k];
            }
        }
        if pivot.is_zero() && j + 1 < n {
            return Err(LinalgError::PivotBreakdown(j));
        }
        for i in j + 1..n {
            let mut v = m.get(i, j).clone();
            for k in 0..j {
                if !s.get(i, k).is_zero() && !s.get(j, k).is_zero() {
                    v -= s.get(i, k) * s.get(j, k) * &d[k];
                }
            }
            s.set(i, j, v / &pivot);
        }
        d[j] = pivot;
    }
    Ok((s, RatMatrix::diagonal(&d)))
}

/// Row positions used by [`left_inverse`]: the lexicographically first maximal
/// independent row set, scanning top to bottom.
pub fn left_inverse_rows(a: &RatMatrix) -> Vec<usize> {
    let mut basis = IndependentRows::new(a.cols());
    let mut chosen = Vec::new();
    for i in 0..a.rows() {
        if basis.rank() == a.cols() {
            break;
        }
        if basis.try_insert(a.row(i)) {
            chosen.push(i);
        }
    }
    chosen
}

/// A left inverse `L` of a full-column-rank `A` (so `L A = I`).
///
/// The square submatrix on the rows chosen by [`left_inverse_rows`] is inverted
/// and its columns are placed at those row positions; all other columns of `L`
/// are zero.
pub fn left_inverse(a: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    let rows = left_inverse_rows(a);
    if rows.len() < a.cols() {
        return Err(LinalgError::RankDeficient { rank: rows.len(), cols: a.cols() });
    }
    let all_cols: Vec<usize> = (0..a.cols()).collect();
    let inv = inverse(&a.submatrix(&rows, &all_cols))?;
    let mut out = RatMatrix::zeros(a.cols(), a.rows());
    for (j, &r) in rows.iter().enumerate() {
        for i in 0..a.cols() {
            out.set(i, r, inv.get(i, j).clone());
        }
    }
    Ok(out)
}
