//! Exact rational scalars and their text encoding.
//!
//! Every scalar in the exact pipeline is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. The text form used
//! in all files is `"p/q"`, or a bare integer when the denominator is one.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;
use thiserror::Error;

pub use num::BigRational as Rational;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(pub String);

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| err())?;
    let d = BigInt::from_str(den).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Huge numerators/denominators: fall back to a scaled quotient.
        _ => {
            let bits = q.numer().bits().max(q.denom().bits()) as i64 - 60;
            let shift = bits.max(0) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(0.0);
            if d == 0.0 {
                if q.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Generalized binomial coefficient `binom(top, k)` for rational `top`.
pub fn binomial(top: &Rational, k: usize) -> Rational {
    let start = top - Rational::from_integer(BigInt::from(k)) + Rational::one();
    pochhammer(&start, k) / factorial(k)
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
