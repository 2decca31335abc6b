use super::order::{MonomialOrder, MultiIndex};
use crate::rational::{format_rational, Rational};
use num::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let mut p = Self::zero(alpha.dim());
        p.add_term(alpha, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i), Rational::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Self::zero(dim);
        for (a, c) in terms {
            assert_eq!(a.dim(), dim, "term dimension mismatch");
            p.add_term(a, c);
        }
        p
    }

    /// Univariate polynomial `Σ c_j t^j` placed on coordinate `axis` of `ℝ^dim`.
    pub fn univariate(dim: usize, axis: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(dim);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; dim];
            e[axis] = j as u32;
            p.add_term(MultiIndex::new(e), c.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree −1.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|a| i64::from(a.degree())).max().unwrap_or(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert_eq!(alpha.dim(), self.dim, "term dimension mismatch");
        match self.terms.entry(alpha) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly { dim: self.dim, terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect() }
    }

    /// `x_i · p`.
    pub fn mul_var(&self, i: usize) -> Poly {
        Poly { dim: self.dim, terms: self.terms.iter().map(|(a, v)| (a.raised(i), v.clone())).collect() }
    }

    /// Adds `c · q` to `self` in place.
    pub fn axpy(&mut self, c: &Rational, q: &Poly) {
        if c.is_zero() {
            return;
        }
        for (a, v) in &q.terms {
            self.add_term(a.clone(), c * v);
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        let mut acc = Rational::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(a.exponents()) {
                if e > 0 {
                    t *= num::pow(xi.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest monomial in the support under `order`, with its coefficient.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    /// `p(x + shift)`.
    pub fn translate(&self, shift: &[Rational]) -> Poly {
        assert_eq!(shift.len(), self.dim);
        let mut out = Poly::zero(self.dim);
        let shifted_vars: Vec<Poly> = (0..self.dim)
            .map(|i| &Poly::var(self.dim, i) + &Poly::constant(self.dim, shift[i].clone()))
            .collect();
        for (a, c) in &self.terms {
            let mut t = Poly::constant(self.dim, c.clone());
            for (i, &e) in a.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = &t * &shifted_vars[i];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficient vector over `basis` monomials; `None` if the support leaves `basis`.
    pub fn coefficients_on(&self, basis: &[MultiIndex]) -> Option<Vec<Rational>> {
        let in_basis = self.terms.keys().all(|a| basis.contains(a));
        in_basis.then(|| basis.iter().map(|a| self.coeff(a)).collect())
    }

    /// Renders the polynomial with terms in ascending `order`, e.g. `3 + 12x + 22y`.
    pub fn display_with(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&MultiIndex> = self.terms.keys().collect();
        keys.sort_by(|a, b| order.compare(a, b));
        let mut out = String::new();
        for (n, a) in keys.into_iter().enumerate() {
            let c = &self.terms[a];
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_name(a);
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}{}", paren_if_fraction(&mag), mono));
            }
        }
        out
    }
}

fn paren_if_fraction(q: &Rational) -> String {
    let s = format_rational(q);
    if s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

fn monomial_name(a: &MultiIndex) -> String {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    let d = a.dim();
    let mut s = String::new();
    for (i, &e) in a.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = if d <= 3 { NAMES[i].to_string() } else { format!("x{}", i + 1) };
        s.push_str(&v);
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MonomialOrder::grevlex(self.dim)))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.axpy(&Rational::one(), rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.axpy(&-Rational::one(), rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = Poly::zero(self.dim);
        for (a, u) in &self.terms {
            for (b, v) in &rhs.terms {
                out.add_term(a.add(b), u * v);
            }
        }
        out
    }
}

/// Polynomial with floating-point coefficients (output of orthonormalization).
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly {
    dim: usize,
    terms: BTreeMap<MultiIndex, f64>,
}

impl FloatPoly {
    pub fn from_poly(p: &Poly, factor: f64) -> Self {
        Self {
            dim: p.dim,
            terms: p
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), crate::rational::to_f64(c) * factor))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.exponents()
                    .iter()
                    .zip(x)
                    .fold(*c, |t, (&e, xi)| t * xi.powi(e as i32))
            })
            .sum()
    }
}
