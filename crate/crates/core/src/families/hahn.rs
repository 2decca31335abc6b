use super::{axpy, falling_neg_x, trim, FamilyError};
use crate::rational::{binomial, factorial, int, pochhammer, Rational};
use crate::staircase::Poly;
use num::{One, Signed, Zero};

/// Hahn parameters `a, b > −1`, `N ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnParams {
    a: Rational,
    b: Rational,
    n: usize,
}

impl HahnParams {
    pub fn new(a: Rational, b: Rational, n: usize) -> Result<Self, FamilyError> {
        if a <= -Rational::one() || b <= -Rational::one() {
            return Err(FamilyError::InvalidParameter(format!("Hahn needs a, b > -1, got a = {a}, b = {b}")));
        }
        if n == 0 {
            return Err(FamilyError::InvalidParameter("Hahn needs N >= 1".into()));
        }
        Ok(Self { a, b, n })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `N`.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// `Q_n(x; a, b, N) = Σ_{k ≤ min(n, N)} (−n)_k (n+a+b+1)_k (−x)_k / ((a+1)_k (−N)_k k!)`.
pub fn hahn_coeffs(n: usize, p: &HahnParams) -> Result<Vec<Rational>, FamilyError> {
    if n > p.n {
        return Err(FamilyError::DegreeOutOfRange { degree: n, max: p.n });
    }
    Ok(hahn_series(n, &p.a, &p.b, p.n))
}

/// The terminating series without parameter checks; needs `n ≤ N`.
pub(crate) fn hahn_series(n: usize, a: &Rational, b: &Rational, big_n: usize) -> Vec<Rational> {
    let nn = int(n as i64);
    let top = &nn + a + b + int(1);
    let a1 = a + int(1);
    let neg_big_n = int(-(big_n as i64));
    let mut out = vec![Rational::zero()];
    for k in 0..=n.min(big_n) {
        let c = pochhammer(&-&nn, k) * pochhammer(&top, k)
            / (pochhammer(&a1, k) * pochhammer(&neg_big_n, k) * factorial(k));
        axpy(&mut out, &c, &falling_neg_x(k));
    }
    trim(out)
}

pub fn hahn(n: usize, p: &HahnParams) -> Result<Poly, FamilyError> {
    Ok(Poly::univariate(1, 0, &hahn_coeffs(n, p)?))
}

/// `binom(x+a, x) binom(N−x+b, N−x)` for `x ∈ {0, …, N}`.
pub fn hahn_weight(x: usize, p: &HahnParams) -> Rational {
    if x > p.n {
        return Rational::zero();
    }
    binomial(&(int(x as i64) + &p.a), x) * binomial(&(int((p.n - x) as i64) + &p.b), p.n - x)
}

/// `Σ_x w(x) Q_n(x)² = (−1)^n n! (b+1)_n (n+a+b+1)_{N+1} / (N! (2n+a+b+1) (−N)_n (a+1)_n)`.
pub fn hahn_norm(n: usize, p: &HahnParams) -> Result<Rational, FamilyError> {
    if n > p.n {
        return Err(FamilyError::DegreeOutOfRange { degree: n, max: p.n });
    }
    let nn = int(n as i64);
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let num = sign * factorial(n) * pochhammer(&(&p.b + int(1)), n) * pochhammer(&(&nn + &p.a + &p.b + int(1)), p.n + 1);
    let den = factorial(p.n)
        * (int(2) * &nn + &p.a + &p.b + int(1))
        * pochhammer(&int(-(p.n as i64)), n)
        * pochhammer(&(&p.a + int(1)), n);
    Ok(num / den)
}

/// `(A_n, C_n)` with `−x Q_n = A_n Q_{n+1} − (A_n + C_n) Q_n + C_n Q_{n−1}`:
///
/// `A_n = (n+a+b+1)(n+a+1)(N−n) / ((2n+a+b+1)(2n+a+b+2))`,
/// `C_n = n(n+a+b+N+1)(n+b) / ((2n+a+b)(2n+a+b+1))`.
///
/// At `n = N`, `A_N = 0` and the relation holds on the support only.
pub fn hahn_recurrence(n: usize, p: &HahnParams) -> Result<(Rational, Rational), FamilyError> {
    if n > p.n {
        return Err(FamilyError::DegreeOutOfRange { degree: n, max: p.n });
    }
    let nn = int(n as i64);
    let s = &p.a + &p.b;
    let big_n = int(p.n as i64);
    let a_n = (&nn + &s + int(1)) * (&nn + &p.a + int(1)) * (&big_n - &nn)
        / ((int(2) * &nn + &s + int(1)) * (int(2) * &nn + &s + int(2)));
    let c_n = if n == 0 {
        Rational::zero()
    } else {
        &nn * (&nn + &s + &big_n + int(1)) * (&nn + &p.b) / ((int(2) * &nn + &s) * (int(2) * &nn + &s + int(1)))
    };
    debug_assert!(!a_n.is_negative());
    Ok((a_n, c_n))
}
