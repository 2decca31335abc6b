use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Exponent vector `α ∈ ℕ₀^d` of the monomial `x^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multi-index dimension must be at least 1");
        Self(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::new(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α + e_i`.
    pub fn raised(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        Self(e)
    }

    /// `α − e_i`, if it stays in `ℕ₀^d`.
    pub fn lowered(&self, i: usize) -> Option<MultiIndex> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Self(e)
        })
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("multi-index {s:?} must look like (e1,...,ed)"))?;
        let exps = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad exponent in {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if exps.is_empty() {
            return Err(format!("empty multi-index {s:?}"));
        }
        Ok(Self(exps))
    }
}

/// All exponent vectors of total degree `degree` in `dim` variables (unsorted).
pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Ties within a degree go to the larger exponent of the highest-precedence variable.
    GradedLex,
    /// Ties within a degree go to the larger exponent of the lowest-precedence variable.
    GradedRevLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::GradedLex => "grlex",
            OrderKind::GradedRevLex => "grevlex",
        }
    }
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "grlex" | "graded-lex" | "graded-lexicographic" => Ok(OrderKind::GradedLex),
            "grevlex" | "graded-revlex" | "graded-reverse-lexicographic" => {
                Ok(OrderKind::GradedRevLex)
            }
            other => Err(format!("unknown monomial order {other:?} (expected grlex or grevlex)")),
        }
    }
}

/// A graded monomial order on `ℕ₀^d`.
///
/// `precedence[0]` is the most significant variable. With the default
/// precedence `x₁ ≻ x₂ ≻ … ≻ x_d`, in two variables graded-lex ranks
/// `x² ≻ xy ≻ y²` and graded-revlex ranks `y² ≻ xy ≻ x²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, dim: usize) -> Self {
        Self { kind, precedence: (0..dim).collect() }
    }

    pub fn grlex(dim: usize) -> Self {
        Self::new(OrderKind::GradedLex, dim)
    }

    pub fn grevlex(dim: usize) -> Self {
        Self::new(OrderKind::GradedRevLex, dim)
    }

    /// `precedence` must be a permutation of `0..d`.
    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, String> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= precedence.len() || std::mem::replace(&mut seen[p], true) {
                return Err(format!("precedence {precedence:?} is not a permutation"));
            }
        }
        if precedence.is_empty() {
            return Err("precedence must name at least one variable".into());
        }
        Ok(Self { kind, precedence })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn dim(&self) -> usize {
        self.precedence.len()
    }

    pub fn is_default_precedence(&self) -> bool {
        self.precedence.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn compare(&self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        let decide = |v: usize| ea[v].cmp(&eb[v]);
        let tie = match self.kind {
            OrderKind::GradedLex => self.precedence.iter().map(|&v| decide(v)).find(|o| o.is_ne()),
            OrderKind::GradedRevLex => {
                self.precedence.iter().rev().map(|&v| decide(v)).find(|o| o.is_ne())
            }
        };
        tie.unwrap_or(Ordering::Equal)
    }

    /// Sorts ascending (smallest monomial first).
    pub fn sort(&self, indices: &mut [MultiIndex]) {
        indices.sort_by(|a, b| self.compare(a, b));
    }

    /// Monomials of one degree in ascending order.
    pub fn degree_block(&self, degree: u32) -> Vec<MultiIndex> {
        let mut out = monomials_of_degree(self.dim(), degree);
        self.sort(&mut out);
        out
    }
}
