//! Point sets, graded monomial orders and the staircase `Λ(V)` indexing `ℝ[V]`.
//!
//! The staircase is found by the greedy rank procedure: monomials are scanned
//! in increasing graded order and `x^α` is kept exactly when its row of values
//! on `V` is independent of the rows already kept. Reduction modulo the
//! vanishing ideal `I(V)` is interpolation on `V` in the staircase basis, since
//! two polynomials are congruent modulo `I(V)` iff they agree on `V`.

mod order;
mod poly;

pub use order::{monomials_of_degree, MonomialOrder, MultiIndex, OrderKind};
pub use poly::{FloatPoly, Poly};

use crate::exactlinalg::{self, IndependentRows, LinalgError, RatMatrix};
use crate::rational::Rational;
use num::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StaircaseError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("stair heights must be nonincreasing")]
    NotNonincreasing,
    #[error("{axis} needs at least {needed} distinct nodes, got {found}")]
    InsufficientNodes { axis: &'static str, needed: usize, found: usize },
    #[error("{0} nodes must be pairwise distinct")]
    DuplicateNode(&'static str),
    #[error("degree {degree} out of range (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("coordinate {coordinate} out of range for dimension {dim}")]
    CoordinateOutOfRange { coordinate: usize, dim: usize },
    #[error("index set is not closed under lowering: {0} has a missing predecessor")]
    NotLowerSet(MultiIndex),
    #[error("index {0} listed twice")]
    DuplicateIndex(MultiIndex),
    #[error("staircase has {indices} monomials but the point set has {points} points")]
    SizeMismatch { points: usize, indices: usize },
    #[error("staircase monomials are not independent on the point set")]
    SingularEvaluation,
}

/// A finite point set `V ⊂ ℝ^d`; list order fixes the column order of evaluation matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, StaircaseError> {
        if dim == 0 {
            return Err(StaircaseError::DimensionMismatch { expected: 1, found: 0 });
        }
        for p in &points {
            if p.len() != dim {
                return Err(StaircaseError::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        let mut seen: HashMap<&[Rational], usize> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = seen.get(p.as_slice()) {
                return Err(StaircaseError::DuplicatePoint(j, i));
            }
            seen.insert(p, i);
        }
        Ok(Self { dim, points })
    }

    pub fn from_i64(dim: usize, points: &[&[i64]]) -> Result<Self, StaircaseError> {
        Self::new(
            dim,
            points
                .iter()
                .map(|p| p.iter().map(|&v| crate::rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rational] {
        &self.points[i]
    }
}

/// Values of `x^α` at `x`.
pub fn monomial_value(alpha: &MultiIndex, x: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for (xi, &e) in x.iter().zip(alpha.exponents()) {
        if e > 0 {
            v *= num::pow(xi.clone(), e as usize);
        }
    }
    v
}

/// Evaluation matrix: entry `(j, i)` is `x_i^{α_j}` (one row per monomial).
pub fn eval_matrix(v: &PointSet, monomials: &[MultiIndex]) -> Result<RatMatrix, StaircaseError> {
    for a in monomials {
        if a.dim() != v.dim() {
            return Err(StaircaseError::DimensionMismatch { expected: v.dim(), found: a.dim() });
        }
    }
    Ok(RatMatrix::from_fn(monomials.len(), v.len(), |j, i| monomial_value(&monomials[j], v.point(i))))
}

/// The lower set `Λ` of exponents indexing a monomial basis of `ℝ[V]`.
///
/// Indices are stored grouped by degree, each degree block ascending in the
/// monomial order. This is the column order of `x^Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    order: MonomialOrder,
    indices: Vec<MultiIndex>,
    offsets: Vec<usize>,
    position: HashMap<MultiIndex, usize>,
}

impl Staircase {
    /// Builds a staircase from an arbitrary listing of indices; checks lower-set closure.
    pub fn from_indices(order: MonomialOrder, mut indices: Vec<MultiIndex>) -> Result<Self, StaircaseError> {
        let dim = order.dim();
        for a in &indices {
            if a.dim() != dim {
                return Err(StaircaseError::DimensionMismatch { expected: dim, found: a.dim() });
            }
        }
        order.sort(&mut indices);
        let mut position = HashMap::with_capacity(indices.len());
        for (i, a) in indices.iter().enumerate() {
            if position.insert(a.clone(), i).is_some() {
                return Err(StaircaseError::DuplicateIndex(a.clone()));
            }
        }
        for a in &indices {
            for i in 0..dim {
                if let Some(b) = a.lowered(i) {
                    if !position.contains_key(&b) {
                        return Err(StaircaseError::NotLowerSet(a.clone()));
                    }
                }
            }
        }
        let top = indices.last().map_or(0, |a| a.degree() as usize);
        let mut offsets = vec![0; top + 2];
        for a in &indices {
            offsets[a.degree() as usize + 1] += 1;
        }
        for k in 1..offsets.len() {
            offsets[k] += offsets[k - 1];
        }
        Ok(Self { order, indices, offsets, position })
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// Top degree `𝐧`.
    pub fn top_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    /// Block sizes `r_0, …, r_𝐧`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn block_size(&self, k: usize) -> usize {
        self.offsets.get(k + 1).map_or(0, |end| end - self.offsets[k])
    }

    /// `Λ_k`, the indices of degree `k`.
    pub fn block(&self, k: usize) -> &[MultiIndex] {
        if k > self.top_degree() {
            return &[];
        }
        &self.indices[self.offsets[k]..self.offsets[k + 1]]
    }

    /// Offset of block `k` in the global index list.
    pub fn block_offset(&self, k: usize) -> usize {
        self.offsets[k.min(self.offsets.len() - 1)]
    }

    /// Indices of degree at most `k`.
    pub fn up_to(&self, k: usize) -> &[MultiIndex] {
        &self.indices[..self.offsets[(k + 1).min(self.offsets.len() - 1)]]
    }

    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.position.get(alpha).copied()
    }

    pub fn contains(&self, alpha: &MultiIndex) -> bool {
        self.position.contains_key(alpha)
    }

    pub fn is_lower_set(&self) -> bool {
        self.indices.iter().all(|a| (0..self.dim()).all(|i| a.lowered(i).is_none_or(|b| self.contains(&b))))
    }
}

/// Greedy rank-based staircase of a finite point set.
pub fn compute_staircase(v: &PointSet, order: &MonomialOrder) -> Result<Staircase, StaircaseError> {
    if v.is_empty() {
        return Err(StaircaseError::EmptyPointSet);
    }
    if order.dim() != v.dim() {
        return Err(StaircaseError::DimensionMismatch { expected: v.dim(), found: order.dim() });
    }
    let mut accepted = Vec::new();
    let mut rows = IndependentRows::new(v.len());
    let mut degree = 0;
    while accepted.len() < v.len() {
        for alpha in order.degree_block(degree) {
            let row: Vec<Rational> = v.points().iter().map(|x| monomial_value(&alpha, x)).collect();
            if rows.try_insert(&row) {
                accepted.push(alpha);
                if accepted.len() == v.len() {
                    break;
                }
            }
        }
        degree += 1;
    }
    Staircase::from_indices(order.clone(), accepted)
}

/// Stair-shaped grid `{(x_k, y_l): 0 ≤ l ≤ m, 0 ≤ k ≤ n_l}` and its predicted staircase
/// `{(k, l): 0 ≤ l ≤ m, 0 ≤ k ≤ n_l}`.
pub fn stair_grid(
    xs: &[Rational],
    ys: &[Rational],
    heights: &[usize],
    order: &MonomialOrder,
) -> Result<(PointSet, Staircase), StaircaseError> {
    if order.dim() != 2 {
        return Err(StaircaseError::DimensionMismatch { expected: 2, found: order.dim() });
    }
    if heights.is_empty() {
        return Err(StaircaseError::InsufficientNodes { axis: "heights", needed: 1, found: 0 });
    }
    if heights.windows(2).any(|w| w[1] > w[0]) {
        return Err(StaircaseError::NotNonincreasing);
    }
    if xs.len() < heights[0] + 1 {
        return Err(StaircaseError::InsufficientNodes { axis: "x", needed: heights[0] + 1, found: xs.len() });
    }
    if ys.len() < heights.len() {
        return Err(StaircaseError::InsufficientNodes { axis: "y", needed: heights.len(), found: ys.len() });
    }
    if has_duplicates(xs) {
        return Err(StaircaseError::DuplicateNode("x"));
    }
    if has_duplicates(ys) {
        return Err(StaircaseError::DuplicateNode("y"));
    }
    let mut points = Vec::new();
    let mut indices = Vec::new();
    for (l, &n) in heights.iter().enumerate() {
        for k in 0..=n {
            points.push(vec![xs[k].clone(), ys[l].clone()]);
            indices.push(MultiIndex::new(vec![k as u32, l as u32]));
        }
    }
    Ok((PointSet::new(2, points)?, Staircase::from_indices(order.clone(), indices)?))
}

fn has_duplicates(v: &[Rational]) -> bool {
    v.iter().enumerate().any(|(i, a)| v[..i].contains(a))
}

/// `L_{k,i}`: the 0/1 matrix with `x_i x^k = L_{k,i} x^{k+1}` modulo the leading-term ideal.
pub fn shift_matrix(lambda: &Staircase, k: usize, i: usize) -> Result<RatMatrix, StaircaseError> {
    if k >= lambda.top_degree() {
        return Err(StaircaseError::DegreeOutOfRange { degree: k, top: lambda.top_degree() });
    }
    if i >= lambda.dim() {
        return Err(StaircaseError::CoordinateOutOfRange { coordinate: i, dim: lambda.dim() });
    }
    let rows = lambda.block(k);
    let next = lambda.block(k + 1);
    let offset = lambda.block_offset(k + 1);
    let mut m = RatMatrix::zeros(rows.len(), next.len());
    for (r, alpha) in rows.iter().enumerate() {
        if let Some(p) = lambda.position(&alpha.raised(i)) {
            m.set(r, p - offset, Rational::one());
        }
    }
    Ok(m)
}

/// Interpolation on `V` in the staircase basis; realizes reduction modulo `I(V)`.
#[derive(Clone, Debug)]
pub struct Interpolator {
    points: PointSet,
    staircase: Staircase,
    /// Inverse of the transposed evaluation matrix.
    inverse: RatMatrix,
}

impl Interpolator {
    pub fn new(points: &PointSet, staircase: &Staircase) -> Result<Self, StaircaseError> {
        if points.dim() != staircase.dim() {
            return Err(StaircaseError::DimensionMismatch { expected: points.dim(), found: staircase.dim() });
        }
        if points.len() != staircase.len() {
            return Err(StaircaseError::SizeMismatch { points: points.len(), indices: staircase.len() });
        }
        let e = eval_matrix(points, staircase.indices())?;
        let inverse = exactlinalg::inverse(&e.transpose()).map_err(|err| match err {
            LinalgError::SingularMatrix => StaircaseError::SingularEvaluation,
            other => unreachable!("square inverse failed unexpectedly: {other}"),
        })?;
        Ok(Self { points: points.clone(), staircase: staircase.clone(), inverse })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    /// The polynomial supported on `Λ` taking `values` at the points of `V`.
    pub fn interpolate(&self, values: &[Rational]) -> Poly {
        let coeffs = self.inverse.mul_vec(values);
        Poly::from_terms(
            self.staircase.dim(),
            self.staircase.indices().iter().cloned().zip(coeffs).filter(|(_, c)| !c.is_zero()),
        )
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, StaircaseError> {
        if p.dim() != self.points.dim() {
            return Err(StaircaseError::DimensionMismatch { expected: self.points.dim(), found: p.dim() });
        }
        let values: Vec<Rational> = self.points.points().iter().map(|x| p.eval(x)).collect();
        Ok(self.interpolate(&values))
    }
}

/// The unique polynomial supported on `Λ` agreeing with `p` on `V`.
pub fn normal_form(p: &Poly, v: &PointSet, lambda: &Staircase) -> Result<Poly, StaircaseError> {
    Interpolator::new(v, lambda)?.normal_form(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn four_points() -> PointSet {
        PointSet::from_i64(2, &[&[0, 0], &[0, 1], &[1, 2], &[2, 3]]).unwrap()
    }

    fn as_set(s: &Staircase) -> Vec<MultiIndex> {
        let mut v = s.indices().to_vec();
        v.sort();
        v
    }

    #[test]
    fn eval_matrix_examples() {
        let v = PointSet::from_i64(1, &[&[2]]).unwrap();
        let m = eval_matrix(&v, &[mi(&[0]), mi(&[1]), mi(&[2])]).unwrap();
        assert_eq!(m, RatMatrix::from_i64(&[&[1], &[2], &[4]]));
        assert_eq!(eval_matrix(&v, &[]).unwrap().shape(), (0, 1));
        assert!(eval_matrix(&v, &[mi(&[0, 1])]).is_err());
    }

    #[test]
    fn four_points_both_orders() {
        let v = four_points();
        let rev = compute_staircase(&v, &MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(as_set(&rev), vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0]), mi(&[2, 0])]);
        let lex = compute_staircase(&v, &MonomialOrder::grlex(2)).unwrap();
        assert_eq!(as_set(&lex), vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[0, 2]), mi(&[1, 0])]);
        // {1, x, y, x^2} is nonsingular on V
        let e = eval_matrix(&v, rev.indices()).unwrap();
        assert_ne!(exactlinalg::determinant(&e).unwrap(), int(0));
    }

    #[test]
    fn single_point_and_collinear() {
        let v = PointSet::from_i64(3, &[&[1, 2, 3]]).unwrap();
        let s = compute_staircase(&v, &MonomialOrder::grevlex(3)).unwrap();
        assert_eq!(s.indices(), &[mi(&[0, 0, 0])]);

        let line = PointSet::from_i64(2, &[&[0, 0], &[1, 0], &[3, 0], &[7, 0]]).unwrap();
        for order in [MonomialOrder::grlex(2), MonomialOrder::grevlex(2)] {
            let s = compute_staircase(&line, &order).unwrap();
            assert_eq!(as_set(&s), (0..4).map(|k| mi(&[k, 0])).collect::<Vec<_>>());
        }
    }

    #[test]
    fn stair_grid_shapes() {
        let xs: Vec<Rational> = (0..4).map(int).collect();
        let ys: Vec<Rational> = (0..5).map(|j| rat(j, 2)).collect();
        let order = MonomialOrder::grevlex(2);
        let (v, lam) = stair_grid(&xs, &ys, &[2, 2, 0, 0], &order).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(lam.block_sizes(), vec![1, 2, 3, 2]);
        assert_eq!(as_set(&compute_staircase(&v, &order).unwrap()), as_set(&lam));

        let (v, lam) = stair_grid(&xs, &ys, &[3, 2, 1, 0], &order).unwrap();
        assert_eq!(v.len(), 10);
        assert!(lam.indices().iter().all(|a| a.degree() <= 3));

        assert_eq!(stair_grid(&xs, &ys, &[1, 2], &order).unwrap_err(), StaircaseError::NotNonincreasing);
        assert!(matches!(
            stair_grid(&xs, &ys, &[4], &order),
            Err(StaircaseError::InsufficientNodes { axis: "x", .. })
        ));
        assert!(matches!(
            stair_grid(&xs, &ys[..1], &[1, 1], &order),
            Err(StaircaseError::InsufficientNodes { axis: "y", .. })
        ));
    }

    #[test]
    fn normal_form_examples() {
        let v = four_points();
        let lam = compute_staircase(&v, &MonomialOrder::grevlex(2)).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let on_lambda = &(&x * &x) + &y.scale(&int(3));
        assert_eq!(normal_form(&on_lambda, &v, &lam).unwrap(), on_lambda);

        // x(x + 1 - y) vanishes on V
        let g2 = &x * &(&(&x + &Poly::one(2)) - &y);
        assert!(normal_form(&g2, &v, &lam).unwrap().is_zero());

        let xy = &x * &y;
        let r = normal_form(&xy, &v, &lam).unwrap();
        assert!(r.support().all(|a| lam.contains(a)));
        for p in v.points() {
            assert_eq!(r.eval(p), xy.eval(p));
        }
        // xy ≡ x^2 + x on V (from g2)
        assert_eq!(r, &(&x * &x) + &x);
    }

    #[test]
    fn shift_matrices() {
        let xs: Vec<Rational> = (0..3).map(int).collect();
        let ys: Vec<Rational> = (0..4).map(int).collect();
        let order = MonomialOrder::grevlex(2);
        let (_, lam) = stair_grid(&xs, &ys, &[2, 2, 0, 0], &order).unwrap();
        let l11 = shift_matrix(&lam, 1, 0).unwrap();
        let row_11 = lam.block(1).iter().position(|a| *a == mi(&[0, 1])).unwrap();
        // x * y = xy stays; x * x = x^2 stays
        assert_eq!(l11.row(row_11).iter().filter(|v| !v.is_zero()).count(), 1);
        let l21 = shift_matrix(&lam, 2, 0).unwrap();
        let row_xy = lam.block(2).iter().position(|a| *a == mi(&[1, 1])).unwrap();
        // x * xy = x^2 y is in Λ, x * x^2 = x^3 is not
        assert_eq!(l21.row(row_xy).iter().filter(|v| !v.is_zero()).count(), 1);
        let row_x2 = lam.block(2).iter().position(|a| *a == mi(&[2, 0])).unwrap();
        assert!(l21.row(row_x2).iter().all(Zero::is_zero));
        for k in 0..lam.top_degree() {
            let parts: Vec<RatMatrix> = (0..2).map(|i| shift_matrix(&lam, k, i).unwrap()).collect();
            let stacked = RatMatrix::vstack(&parts, lam.block_size(k + 1));
            assert_eq!(exactlinalg::rank(&stacked), lam.block_size(k + 1));
        }
        assert!(matches!(shift_matrix(&lam, 3, 0), Err(StaircaseError::DegreeOutOfRange { .. })));
    }

    #[test]
    fn from_indices_rejects_non_lower_sets() {
        let order = MonomialOrder::grevlex(2);
        let err = Staircase::from_indices(order.clone(), vec![mi(&[0, 0]), mi(&[1, 1])]).unwrap_err();
        assert_eq!(err, StaircaseError::NotLowerSet(mi(&[1, 1])));
        assert!(Staircase::from_indices(order, vec![mi(&[0, 0]), mi(&[0, 0])]).is_err());
    }

    #[test]
    fn duplicate_points_rejected() {
        assert_eq!(
            PointSet::from_i64(1, &[&[1], &[2], &[1]]).unwrap_err(),
            StaircaseError::DuplicatePoint(0, 2)
        );
    }
}
