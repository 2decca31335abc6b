//! Moment functionals and construction of orthogonal polynomial blocks.
//!
//! For `𝓛f = Σ_{x∈V} f(x) W(x)` with nonzero weights, orthogonal blocks
//! `ℙ_0, …, ℙ_𝐧` exist iff every Gram matrix `M_k` of the staircase monomials
//! of degree at most `k` is nonsingular. [`construct_orthogonal`] runs a
//! degree-block Gram–Schmidt, then diagonalizes each block when its Gram block
//! admits an `S D Sᵀ` factorization, which reproduces the sequential
//! Gram–Schmidt in monomial order.

mod basis;
mod orthonormal;

pub use basis::{
    canonical_scale, canonical_scale_factor, construct_orthogonal, OrthoBasis, OrthogonalityReport, Scaling,
};
pub use orthonormal::{orthonormalize, FloatBasis};

use crate::exactlinalg::{self, RatMatrix};
use crate::rational::Rational;
use crate::staircase::{monomial_value, MultiIndex, PointSet, Poly, Staircase};
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthoError {
    #[error("weight at point {0} is zero")]
    ZeroWeight(usize),
    #[error("{weights} weights given for {points} points")]
    LengthMismatch { points: usize, weights: usize },
    #[error("no orthogonal polynomials: moment matrix M_{0} is singular")]
    ExistenceFailure(usize),
    #[error("cannot normalize the zero polynomial")]
    ZeroPolynomial,
    #[error("orthonormalization needs positive weights")]
    NotPositive,
    #[error("degree block {degree} has {found} polynomials, staircase expects {expected}")]
    BlockSize { degree: usize, expected: usize, found: usize },
    #[error("polynomial {index} of block {degree} is not supported on the staircase up to degree {degree}")]
    NotOnStaircase { degree: usize, index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Nonzero weights `W(x)` aligned with a point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFn {
    values: Vec<Rational>,
    positive: bool,
}

impl WeightFn {
    pub fn new(values: Vec<Rational>) -> Result<Self, OrthoError> {
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(OrthoError::ZeroWeight(i));
        }
        let positive = values.iter().all(Signed::is_positive);
        Ok(Self { values, positive })
    }

    /// `W ≡ 1/n`.
    pub fn uniform(n: usize) -> Self {
        let w = Rational::new(1.into(), (n as i64).into());
        Self { values: vec![w; n], positive: true }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }
}

/// `𝓛f = Σ_{x∈V} f(x) W(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentFunctional {
    points: PointSet,
    weights: WeightFn,
}

impl MomentFunctional {
    pub fn new(points: PointSet, weights: WeightFn) -> Result<Self, OrthoError> {
        if points.len() != weights.len() {
            return Err(OrthoError::LengthMismatch { points: points.len(), weights: weights.len() });
        }
        Ok(Self { points, weights })
    }

    pub fn uniform(points: PointSet) -> Self {
        let weights = WeightFn::uniform(points.len());
        Self { points, weights }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn weights(&self) -> &WeightFn {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    /// `𝓛(x^α)`.
    pub fn moment(&self, alpha: &MultiIndex) -> Rational {
        self.points
            .points()
            .iter()
            .zip(self.weights.values())
            .map(|(x, w)| monomial_value(alpha, x) * w)
            .sum()
    }

    pub fn apply(&self, f: &Poly) -> Rational {
        self.points
            .points()
            .iter()
            .zip(self.weights.values())
            .map(|(x, w)| f.eval(x) * w)
            .sum()
    }

    /// Values of `f` at the points, in point order.
    pub fn values(&self, f: &Poly) -> Vec<Rational> {
        self.points.points().iter().map(|x| f.eval(x)).collect()
    }

    /// `Σ f(x) g(x) W(x)` for functions given by their values on `V`.
    pub fn pair_values(&self, f: &[Rational], g: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for ((a, b), w) in f.iter().zip(g).zip(self.weights.values()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b * w;
            }
        }
        acc
    }

    /// `Σ c(x) f(x) g(x) W(x)`.
    pub fn pair_values_with(&self, c: &[Rational], f: &[Rational], g: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (((a, b), w), m) in f.iter().zip(g).zip(self.weights.values()).zip(c) {
            if !a.is_zero() && !b.is_zero() && !m.is_zero() {
                acc += a * b * w * m;
            }
        }
        acc
    }

    /// `𝓛(F Gᵀ)` for vectors of functions given by values.
    pub fn gram_of_values(&self, f: &[Vec<Rational>], g: &[Vec<Rational>]) -> RatMatrix {
        RatMatrix::from_fn(f.len(), g.len(), |i, j| self.pair_values(&f[i], &g[j]))
    }
}

/// `M_k = 𝓛(x_k^Λ (x_k^Λ)ᵀ)` over the staircase monomials of degree at most `k`.
pub fn gram_matrix(l: &MomentFunctional, lambda: &Staircase, k: usize) -> RatMatrix {
    let mons = lambda.up_to(k);
    let mut m = RatMatrix::zeros(mons.len(), mons.len());
    for i in 0..mons.len() {
        for j in 0..=i {
            let v = l.moment(&mons[i].add(&mons[j]));
            m.set(j, i, v.clone());
            m.set(i, j, v);
        }
    }
    m
}

/// Nonsingularity of each `M_k`, `k = 0..=𝐧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    pub nonsingular: Vec<bool>,
}

impl ExistenceReport {
    pub fn exists(&self) -> bool {
        self.nonsingular.iter().all(|&b| b)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.nonsingular.iter().position(|&b| !b)
    }
}

pub fn existence_check(l: &MomentFunctional, lambda: &Staircase) -> ExistenceReport {
    let full = gram_matrix(l, lambda, lambda.top_degree());
    let nonsingular = (0..=lambda.top_degree())
        .map(|k| {
            let n = lambda.up_to(k).len();
            let idx: Vec<usize> = (0..n).collect();
            exactlinalg::rank(&full.submatrix(&idx, &idx)) == n
        })
        .collect();
    ExistenceReport { nonsingular }
}
