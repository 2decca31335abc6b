//! Classical discrete orthogonal polynomials with closed forms.
//!
//! Hahn polynomials on `{0, …, N}`, Meixner polynomials on `ℕ_0`, their
//! tensor-product bases on grids with explicit recurrence blocks, and the
//! bivariate Hahn polynomials on the lattice triangle `x, y ≥ 0, x + y ≤ N`.
//! Univariate polynomials are coefficient vectors in ascending powers.

mod hahn;
mod meixner;
mod product;
mod triangle;

pub use hahn::{hahn, hahn_coeffs, hahn_norm, hahn_recurrence, hahn_weight, HahnParams};
pub use meixner::{
    meixner, meixner_coeffs, meixner_eval_f64, meixner_norm, meixner_norm_check, meixner_partial_sums,
    meixner_recurrence, meixner_weight, MeixnerParams, NormCheck,
};
pub use meixner::default_truncation;
pub use product::{product_basis, product_recurrence, product_recurrence_blocks, FamilyBasis};
pub use triangle::{triangle_basis, triangle_hahn, triangle_points, triangle_weight, TriangleHahnParams};

use crate::rational::{int, Rational};
use crate::staircase::Poly;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degree {degree} out of range (maximum {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
}

/// A univariate family, as used for tensor products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Hahn(HahnParams),
    Meixner(MeixnerParams),
}

impl Family {
    /// Largest degree with a nonzero polynomial on the support, if finite.
    pub fn max_degree(&self) -> Option<usize> {
        match self {
            Family::Hahn(p) => Some(p.n()),
            Family::Meixner(_) => None,
        }
    }

    pub fn coeffs(&self, n: usize) -> Result<Vec<Rational>, FamilyError> {
        match self {
            Family::Hahn(p) => hahn_coeffs(n, p),
            Family::Meixner(p) => Ok(meixner_coeffs(n, p)),
        }
    }

    /// `(a_n, b_n, c_n)` with `x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n−1}`.
    pub fn recurrence(&self, n: usize) -> Result<(Rational, Rational, Rational), FamilyError> {
        match self {
            Family::Hahn(p) => {
                let (a, c) = hahn_recurrence(n, p)?;
                Ok((-&a, &a + &c, -c))
            }
            Family::Meixner(p) => Ok(meixner_recurrence(n, p)),
        }
    }

    pub fn weight(&self, x: usize) -> Rational {
        match self {
            Family::Hahn(p) => hahn_weight(x, p),
            Family::Meixner(p) => meixner_weight(x, p),
        }
    }

    /// Support points `0, …, N`, or `0, …, T` for an infinite support truncated at `T`.
    pub fn support(&self, truncation: usize) -> Vec<usize> {
        match self {
            Family::Hahn(p) => (0..=p.n()).collect(),
            Family::Meixner(_) => (0..=truncation).collect(),
        }
    }
}

/// `(−x)_k = Π_{j<k} (j − x)` as ascending coefficients.
pub(crate) fn falling_neg_x(k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for j in 0..k {
        out = mul_linear(&out, &int(j as i64), &-Rational::one());
    }
    out
}

/// `p · (c0 + c1 x)`.
pub(crate) fn mul_linear(p: &[Rational], c0: &Rational, c1: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (i, a) in p.iter().enumerate() {
        out[i] += a * c0;
        out[i + 1] += a * c1;
    }
    out
}

pub(crate) fn axpy(acc: &mut Vec<Rational>, c: &Rational, p: &[Rational]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rational::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += c * b;
    }
}

pub(crate) fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Horner evaluation of ascending coefficients.
pub fn eval_coeffs(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Embeds ascending coefficients as a polynomial in `x_axis` of `ℝ^dim`.
pub fn embed(coeffs: &[Rational], dim: usize, axis: usize) -> Poly {
    Poly::univariate(dim, axis, coeffs)
}

/// `p_0, …, p_degree` as a one-variable basis on the support (cut at `truncation` when infinite).
pub fn univariate_basis(f: &Family, degree: usize, truncation: usize) -> Result<FamilyBasis, FamilyError> {
    use crate::orthogonalize::WeightFn;
    use crate::staircase::{MonomialOrder, MultiIndex, PointSet, Staircase};
    if let Some(max) = f.max_degree() {
        if degree > max {
            return Err(FamilyError::DegreeOutOfRange { degree, max });
        }
    }
    let blocks = (0..=degree)
        .map(|n| Ok(vec![embed(&f.coeffs(n)?, 1, 0)]))
        .collect::<Result<Vec<_>, FamilyError>>()?;
    let indices = (0..=degree as u32).map(|e| MultiIndex::new(vec![e])).collect();
    let staircase = Staircase::from_indices(MonomialOrder::grevlex(1), indices).expect("an interval is a lower set");
    let support = f.support(truncation);
    let points = PointSet::new(1, support.iter().map(|&x| vec![int(x as i64)]).collect()).expect("distinct nodes");
    let weights = WeightFn::new(support.iter().map(|&x| f.weight(x)).collect())
        .map_err(|e| FamilyError::InvalidParameter(e.to_string()))?;
    Ok(FamilyBasis { staircase, blocks, points, weights })
}

/// Scalar recurrence blocks of `p_0, …, p_degree`, including the top degree.
pub fn univariate_recurrence(f: &Family, degree: usize) -> Result<crate::recurrence::Recurrence, FamilyError> {
    use crate::exactlinalg::RatMatrix;
    let scalar = |v: Rational| RatMatrix::new(1, 1, vec![v]);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for n in 0..=degree {
        let (an, bn, cn) = f.recurrence(n)?;
        if n < degree {
            a.push(vec![scalar(an)]);
        }
        b.push(vec![scalar(bn)]);
        c.push(vec![if n == 0 { RatMatrix::zeros(1, 0) } else { scalar(cn) }]);
    }
    Ok(crate::recurrence::Recurrence::new(1, vec![1; degree + 1], a, b, c).expect("scalar blocks conform"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{commute_check, compute_recurrence, jacobi_operators, verify_three_term};

    #[test]
    fn univariate_hahn_on_its_support() {
        let f = Family::Hahn(HahnParams::new(int(0), int(0), 3).unwrap());
        let fb = univariate_basis(&f, 3, 0).unwrap();
        let l = fb.functional();
        let basis = fb.basis().unwrap();
        assert!(basis.orthogonality_report(&l).pass());
        let rec = univariate_recurrence(&f, 3).unwrap();
        assert_eq!(compute_recurrence(&basis, &l).unwrap(), rec);
        assert!(verify_three_term(&rec, &basis, l.points()).unwrap().pass());
        let j = jacobi_operators(&rec).unwrap();
        assert_eq!(j[0].matrix.shape(), (4, 4));
        assert!(commute_check(&j).pass());
    }
}
