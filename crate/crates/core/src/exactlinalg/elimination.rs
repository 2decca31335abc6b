//! Fraction-free (Bareiss) elimination.
//!
//! Rows are first cleared of denominators (a row scaling, which preserves rank
//! and only rescales the determinant), then eliminated over the integers where
//! every intermediate entry is a minor of the input and every division is exact.

use super::{LinalgError, RatMatrix};
use crate::rational::{denominator_lcm, Rational};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Integer rows `s_i * row_i` together with the scale factors `s_i`.
fn integer_rows(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let s = denominator_lcm(row);
        rows.push(row.iter().map(|q| q.numer() * (&s / q.denom())).collect());
        scales.push(s);
    }
    (rows, scales)
}

/// In-place Bareiss elimination with row pivoting over the first `pivot_cols`
/// columns. Returns the pivot positions `(row, col)` and the permutation sign.
fn bareiss(a: &mut [Vec<BigInt>], pivot_cols: usize) -> (Vec<(usize, usize)>, bool) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut negated = false;
    for col in 0..pivot_cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negated = !negated;
        }
        for i in r + 1..m {
            for j in col + 1..n {
                let v = (&a[r][col] * &a[i][j] - &a[i][col] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push((r, col));
        r += 1;
    }
    (pivots, negated)
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let (mut rows, _) = integer_rows(m);
    bareiss(&mut rows, m.cols()).0.len()
}

pub fn determinant(m: &RatMatrix) -> Result<Rational, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut rows, scales) = integer_rows(m);
    let (pivots, negated) = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let mut det = rows[n - 1][n - 1].clone();
    if negated {
        det = -det;
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(Rational::new(det, scale))
}

/// Solves `M X = B` exactly for square nonsingular `M`.
pub fn solve(m: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if b.rows() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: b.rows() });
    }
    let n = m.rows();
    let k = b.cols();
    let augmented = RatMatrix::hstack(&[m.clone(), b.clone()], n);
    let (mut a, _) = integer_rows(&augmented);
    let (pivots, _) = bareiss(&mut a, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &(r, c))| r != i || c != i) {
        return Err(LinalgError::SingularMatrix);
    }
    let mut x = RatMatrix::zeros(n, k);
    for col in 0..k {
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n + col].clone());
            for j in i + 1..n {
                if !a[i][j].is_zero() {
                    acc -= Rational::from_integer(a[i][j].clone()) * x.get(j, col);
                }
            }
            x.set(i, col, acc / Rational::from_integer(a[i][i].clone()));
        }
    }
    Ok(x)
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    solve(m, &RatMatrix::identity(m.rows()))
}

/// Incrementally maintained set of linearly independent rational row vectors.
///
/// Stored rows are primitive integer vectors in echelon form: each row is zero
/// at the pivot columns of all earlier rows.
#[derive(Clone, Debug)]
pub struct IndependentRows {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IndependentRows {
    pub fn new(width: usize) -> Self {
        Self { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let s = denominator_lcm(v);
        let mut w: Vec<BigInt> = v.iter().map(|q| q.numer() * (&s / q.denom())).collect();
        for (p, r) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let g = r[*p].gcd(&w[*p]);
            let fr = &r[*p] / &g;
            let fw = &w[*p] / &g;
            for (wj, rj) in w.iter_mut().zip(r) {
                *wj = &fr * &*wj - &fw * rj;
            }
            make_primitive(&mut w);
        }
        w
    }

    /// Whether `v` lies outside the span of the stored rows.
    pub fn is_independent(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if it is independent of the stored rows; reports whether it was added.
    pub fn try_insert(&mut self, v: &[Rational]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

fn make_primitive(w: &mut [BigInt]) {
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::one() {
        for x in w.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = w.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in w.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 2], &[0, 1, 0]])), 2);
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]], 2);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_examples() {
        let b = RatMatrix::from_i64(&[&[3, 1], &[-2, 5]]);
        assert_eq!(solve(&RatMatrix::identity(2), &b).unwrap(), b);
        let m = RatMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let x = solve(&m, &RatMatrix::from_i64(&[&[1], &[1]])).unwrap();
        assert_eq!(x, RatMatrix::from_rows(vec![vec![rat(1, 2)], vec![rat(1, 4)]], 1));
        let singular = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(solve(&singular, &b), Err(LinalgError::SingularMatrix));
    }

    #[test]
    fn solve_needs_pivoting() {
        let m = RatMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let b = RatMatrix::from_i64(&[&[1], &[2], &[3]]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(&m * &x, b);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(3));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&RatMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
        assert_eq!(determinant(&RatMatrix::from_i64(&[&[2, 3], &[4, 6]])).unwrap(), int(0));
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), int(1)], vec![int(3), rat(1, 3)]], 2);
        assert_eq!(determinant(&m).unwrap(), rat(1, 6) - int(3));
    }

    #[test]
    fn independent_rows() {
        let mut rows = IndependentRows::new(3);
        assert!(rows.try_insert(&[int(1), int(1), int(1)]));
        assert!(rows.try_insert(&[int(0), int(1), int(2)]));
        assert!(!rows.try_insert(&[int(2), int(3), int(4)]));
        assert!(rows.try_insert(&[int(0), int(0), rat(1, 7)]));
        assert_eq!(rows.rank(), 3);
        assert!(!rows.is_independent(&[int(5), int(-1), int(3)]));
    }
}
