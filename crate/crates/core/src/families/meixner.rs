use super::{axpy, falling_neg_x, trim, FamilyError};
use crate::rational::{factorial, int, pochhammer, to_f64, Rational};
use crate::staircase::Poly;
use num::{One, Signed, Zero};

/// Meixner parameters `b > 0`, `0 < c < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeixnerParams {
    b: Rational,
    c: Rational,
}

impl MeixnerParams {
    pub fn new(b: Rational, c: Rational) -> Result<Self, FamilyError> {
        if !b.is_positive() {
            return Err(FamilyError::InvalidParameter(format!("Meixner needs b > 0, got {b}")));
        }
        if !c.is_positive() || c >= Rational::one() {
            return Err(FamilyError::InvalidParameter(format!("Meixner needs 0 < c < 1, got {c}")));
        }
        Ok(Self { b, c })
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }
}

/// `M_n(x; b, c) = Σ_k (−n)_k (−x)_k / ((b)_k k!) (1 − 1/c)^k`.
pub fn meixner_coeffs(n: usize, p: &MeixnerParams) -> Vec<Rational> {
    let z = Rational::one() - p.c.recip();
    let nn = int(n as i64);
    let mut out = vec![Rational::zero()];
    let mut zk = Rational::one();
    for k in 0..=n {
        let coef = pochhammer(&-&nn, k) * &zk / (pochhammer(&p.b, k) * factorial(k));
        axpy(&mut out, &coef, &falling_neg_x(k));
        zk *= &z;
    }
    trim(out)
}

pub fn meixner(n: usize, p: &MeixnerParams) -> Poly {
    Poly::univariate(1, 0, &meixner_coeffs(n, p))
}

/// `(b)_x c^x / x!`.
pub fn meixner_weight(x: usize, p: &MeixnerParams) -> Rational {
    pochhammer(&p.b, x) * num::pow(p.c.clone(), x) / factorial(x)
}

/// `(a_n, b_n, c_n)` with `x M_n = a_n M_{n+1} + b_n M_n + c_n M_{n−1}`, from
/// `(c−1) x M_n = c(n+b) M_{n+1} − (n + (n+b)c) M_n + n M_{n−1}`.
pub fn meixner_recurrence(n: usize, p: &MeixnerParams) -> (Rational, Rational, Rational) {
    let nn = int(n as i64);
    let d = &p.c - int(1);
    let nb = &nn + &p.b;
    (&p.c * &nb / &d, -(&nn + &nb * &p.c) / &d, nn / d)
}

/// `c^{−n} n! / ((b)_n (1−c)^b)` in floating point.
pub fn meixner_norm(n: usize, p: &MeixnerParams) -> f64 {
    let c = to_f64(&p.c);
    let b = to_f64(&p.b);
    to_f64(&(factorial(n) / pochhammer(&p.b, n))) * c.powi(-(n as i32)) / (1.0 - c).powf(b)
}

/// `M_n(x)` in floating point via the recurrence in `n`.
pub fn meixner_eval_f64(n: usize, x: f64, p: &MeixnerParams) -> f64 {
    let b = to_f64(&p.b);
    let c = to_f64(&p.c);
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = (((c - 1.0) * x + kf + (kf + b) * c) * cur - kf * prev) / (c * (kf + b));
        prev = cur;
        cur = next;
    }
    cur
}

/// Partial sums `S_T = Σ_{x ≤ T} (b)_x c^x / x! · M_m(x) M_n(x)` for `T = 0..=truncation`.
pub fn meixner_partial_sums(m: usize, n: usize, p: &MeixnerParams, truncation: usize) -> Vec<f64> {
    let b = to_f64(&p.b);
    let c = to_f64(&p.c);
    let mut w = 1.0;
    let mut sum = 0.0;
    let mut out = Vec::with_capacity(truncation + 1);
    for x in 0..=truncation {
        if x > 0 {
            let xf = x as f64;
            w *= (b + xf - 1.0) * c / xf;
        }
        let xf = x as f64;
        sum += w * meixner_eval_f64(m, xf, p) * meixner_eval_f64(n, xf, p);
        out.push(sum);
    }
    out
}

/// Truncation at which `|w(x) M_m(x) M_n(x)|` drops below `2^{−100}` of the running absolute sum.
pub fn default_truncation(m: usize, n: usize, p: &MeixnerParams) -> usize {
    let b = to_f64(&p.b);
    let c = to_f64(&p.c);
    let threshold = (-100f64).exp2();
    let mut w = 1.0;
    let mut total = 0.0;
    let mut x = 0usize;
    loop {
        if x > 0 {
            w *= (b + x as f64 - 1.0) * c / x as f64;
        }
        let term = (w * meixner_eval_f64(m, x as f64, p) * meixner_eval_f64(n, x as f64, p)).abs();
        total += term;
        let past_bulk = x as f64 > (m + n) as f64 + b / (1.0 - c);
        if past_bulk && term <= threshold * total {
            return x;
        }
        x += 1;
    }
}

/// Outcome of a truncated Meixner orthogonality sum.
#[derive(Clone, Debug, PartialEq)]
pub struct NormCheck {
    pub truncation: usize,
    pub partial_sum: f64,
    pub target: f64,
    /// `|S_T − target|`, relative to `√(h_m h_n)`.
    pub gap: f64,
    /// Whether the gap is nonincreasing in `T` after the last sign change of `M_m M_n`.
    pub monotone_tail: bool,
}

impl NormCheck {
    pub fn pass(&self, tolerance: f64) -> bool {
        self.gap <= tolerance && self.monotone_tail
    }
}

pub fn meixner_norm_check(m: usize, n: usize, p: &MeixnerParams, truncation: Option<usize>) -> NormCheck {
    let truncation = truncation.unwrap_or_else(|| default_truncation(m, n, p));
    let sums = meixner_partial_sums(m, n, p, truncation);
    let target = if m == n { meixner_norm(n, p) } else { 0.0 };
    let scale = (meixner_norm(m, p) * meixner_norm(n, p)).sqrt();
    let gaps: Vec<f64> = sums.iter().map(|s| (s - target).abs() / scale).collect();
    let sign = |x: usize| (meixner_eval_f64(m, x as f64, p) * meixner_eval_f64(n, x as f64, p)).signum();
    let mut last_change = 0;
    for x in 1..=truncation {
        if sign(x) != sign(x - 1) {
            last_change = x;
        }
    }
    let slack = 8.0 * f64::EPSILON;
    let monotone_tail = gaps[last_change..].windows(2).all(|w| w[1] <= w[0] + slack);
    NormCheck { truncation, partial_sum: sums[truncation], target, gap: gaps[truncation], monotone_tail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{eval_coeffs, mul_linear};
    use crate::rational::rat;

    fn params() -> MeixnerParams {
        MeixnerParams::new(int(1), rat(1, 2)).unwrap()
    }

    #[test]
    fn low_degrees() {
        let p = MeixnerParams::new(rat(3, 2), rat(1, 3)).unwrap();
        assert_eq!(meixner_coeffs(0, &p), vec![int(1)]);
        // 1 − x(1−c)/(bc)
        assert_eq!(meixner_coeffs(1, &p), vec![int(1), -(rat(2, 3) / (rat(3, 2) * rat(1, 3)))]);
    }

    #[test]
    fn recurrence_identity() {
        let p = MeixnerParams::new(rat(5, 2), rat(2, 7)).unwrap();
        for n in 0..6 {
            let (a, b, c) = meixner_recurrence(n, &p);
            let lhs = mul_linear(&meixner_coeffs(n, &p), &int(0), &int(1));
            let mut rhs = vec![Rational::zero()];
            axpy(&mut rhs, &a, &meixner_coeffs(n + 1, &p));
            axpy(&mut rhs, &b, &meixner_coeffs(n, &p));
            if n > 0 {
                axpy(&mut rhs, &c, &meixner_coeffs(n - 1, &p));
            }
            assert_eq!(trim(lhs), trim(rhs));
        }
    }

    #[test]
    fn float_evaluation_matches_exact() {
        let p = MeixnerParams::new(rat(5, 2), rat(2, 7)).unwrap();
        for n in 0..6 {
            for x in 0..10 {
                let exact = to_f64(&eval_coeffs(&meixner_coeffs(n, &p), &int(x)));
                let float = meixner_eval_f64(n, x as f64, &p);
                assert!((exact - float).abs() <= 1e-12 * exact.abs().max(1.0));
            }
        }
    }

    #[test]
    fn norms() {
        let p = params();
        assert_eq!(meixner_norm(0, &p), 2.0);
        let first = meixner_partial_sums(2, 3, &p, 0);
        assert_eq!(first, vec![1.0]);
        for (m, n) in [(0, 0), (1, 1), (2, 3), (3, 3), (0, 4)] {
            let check = meixner_norm_check(m, n, &p, None);
            assert!(check.pass(1e-12), "{m} {n}: {check:?}");
        }
        let short = meixner_norm_check(1, 1, &p, Some(5));
        assert!(short.gap > 1e-3);
    }

    #[test]
    fn parameters_are_validated() {
        assert!(MeixnerParams::new(int(0), rat(1, 2)).is_err());
        assert!(MeixnerParams::new(int(1), int(1)).is_err());
    }
}
