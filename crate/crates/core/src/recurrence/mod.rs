//! The matrix three-term relation
//! `x_i ℙ_k = A_{k,i} ℙ_{k+1} + B_{k,i} ℙ_k + C_{k,i} ℙ_{k−1}  (mod I(V))`
//! and its consequences: rank conditions, block Jacobi operators, the
//! Christoffel–Darboux identity, and the Favard direction from recurrence
//! matrices back to polynomials and a weighted point set.
//!
//! Congruence modulo `I(V)` is checked as equality of values on `V`.

mod favard;
mod float;
mod jacobi;

pub use favard::{favard_reconstruct, ideal_generators, recover_measure, RecoveryOptions};
pub use float::{compute_recurrence_f64, FloatRecurrence};
pub use jacobi::{christoffel_darboux, commute_check, jacobi_operators, CommuteReport, JacobiOperator};

use crate::exactlinalg::{self, RatMatrix};
use crate::orthogonalize::{MomentFunctional, OrthoBasis, OrthoError};
use crate::rational::Rational;
use crate::staircase::{shift_matrix, PointSet, StaircaseError};
use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rank condition fails at degree {0}")]
    RankDeficient(usize),
    #[error("points share coordinate {0}")]
    CoincidentCoordinate(usize),
    #[error("degree {degree} out of range (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("coordinate {coordinate} out of range for dimension {dim}")]
    CoordinateOutOfRange { coordinate: usize, dim: usize },
    #[error("recurrence has no top-degree blocks B_n, C_n")]
    MissingTopBlocks,
    #[error("no realizing point set after {attempts} attempts ({on_variety} candidates on the variety, {needed} needed)")]
    ExhaustedAttempts { attempts: usize, on_variety: usize, needed: usize },
    #[error("Gram block H_{0} is singular")]
    SingularGram(usize),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

/// Blocks `A_{k,i}`, `B_{k,i}`, `C_{k,i}` of the three-term relation.
///
/// `A` is stored for `k < 𝐧`. `B` and `C` are stored for `k < 𝐧` and
/// optionally for `k = 𝐧`, where `A_{𝐧,i} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    dim: usize,
    sizes: Vec<usize>,
    a: Vec<Vec<RatMatrix>>,
    b: Vec<Vec<RatMatrix>>,
    c: Vec<Vec<RatMatrix>>,
}

impl Recurrence {
    pub fn new(
        dim: usize,
        sizes: Vec<usize>,
        a: Vec<Vec<RatMatrix>>,
        b: Vec<Vec<RatMatrix>>,
        c: Vec<Vec<RatMatrix>>,
    ) -> Result<Self, RecurrenceError> {
        let bad = |msg: String| Err(RecurrenceError::ShapeMismatch(msg));
        if sizes.is_empty() || sizes.contains(&0) {
            return bad("block sizes must be positive and nonempty".into());
        }
        let n = sizes.len() - 1;
        if a.len() != n {
            return bad(format!("expected {n} degrees of A, found {}", a.len()));
        }
        if b.len() != c.len() || (b.len() != n && b.len() != n + 1) {
            return bad(format!("B and C need {n} or {} degrees, found {} and {}", n + 1, b.len(), c.len()));
        }
        let check = |name: &str, blocks: &[Vec<RatMatrix>], shape: &dyn Fn(usize) -> (usize, usize)| {
            for (k, row) in blocks.iter().enumerate() {
                if row.len() != dim {
                    return Err(RecurrenceError::ShapeMismatch(format!(
                        "{name}_{k} has {} coordinates, expected {dim}",
                        row.len()
                    )));
                }
                for (i, m) in row.iter().enumerate() {
                    if m.shape() != shape(k) {
                        return Err(RecurrenceError::ShapeMismatch(format!(
                            "{name}_{{{k},{i}}} is {:?}, expected {:?}",
                            m.shape(),
                            shape(k)
                        )));
                    }
                }
            }
            Ok(())
        };
        check("A", &a, &|k| (sizes[k], sizes[k + 1]))?;
        check("B", &b, &|k| (sizes[k], sizes[k]))?;
        check("C", &c, &|k| (sizes[k], if k == 0 { 0 } else { sizes[k - 1] }))?;
        Ok(Self { dim, sizes, a, b, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn top_degree(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn has_top_blocks(&self) -> bool {
        self.b.len() == self.sizes.len()
    }

    pub fn a(&self, k: usize, i: usize) -> &RatMatrix {
        &self.a[k][i]
    }

    pub fn b(&self, k: usize, i: usize) -> &RatMatrix {
        &self.b[k][i]
    }

    pub fn c(&self, k: usize, i: usize) -> &RatMatrix {
        &self.c[k][i]
    }

    /// Degrees for which `B` and `C` are stored.
    pub fn bc_degrees(&self) -> usize {
        self.b.len()
    }

    pub fn a_blocks(&self) -> &[Vec<RatMatrix>] {
        &self.a
    }

    pub fn b_blocks(&self) -> &[Vec<RatMatrix>] {
        &self.b
    }

    pub fn c_blocks(&self) -> &[Vec<RatMatrix>] {
        &self.c
    }

    pub fn a_blocks_mut(&mut self) -> &mut [Vec<RatMatrix>] {
        &mut self.a
    }

    pub fn b_blocks_mut(&mut self) -> &mut [Vec<RatMatrix>] {
        &mut self.b
    }

    /// `A_k`: the `A_{k,i}` stacked vertically, `d·r_k × r_{k+1}`.
    pub fn composite_a(&self, k: usize) -> RatMatrix {
        RatMatrix::vstack(&self.a[k], self.sizes[k + 1])
    }

    /// `C_k`: the `C_{k,i}` side by side, `r_k × d·r_{k−1}`.
    pub fn composite_c(&self, k: usize) -> RatMatrix {
        RatMatrix::hstack(&self.c[k], self.sizes[k])
    }
}

/// Extracts `A`, `B`, `C` (including top-degree `B_𝐧`, `C_𝐧`) from a basis under `l`.
pub fn compute_recurrence(basis: &OrthoBasis, l: &MomentFunctional) -> Result<Recurrence, RecurrenceError> {
    let dim = l.dim();
    let values = basis.values(l);
    let coords: Vec<Vec<Rational>> =
        (0..dim).map(|i| l.points().points().iter().map(|x| x[i].clone()).collect()).collect();
    let inverses = values
        .iter()
        .enumerate()
        .map(|(k, v)| exactlinalg::inverse(&l.gram_of_values(v, v)).map_err(|_| RecurrenceError::SingularGram(k)))
        .collect::<Result<Vec<_>, _>>()?;
    let moment = |xi: &[Rational], f: &[Vec<Rational>], g: &[Vec<Rational>]| {
        RatMatrix::from_fn(f.len(), g.len(), |p, q| l.pair_values_with(xi, &f[p], &g[q]))
    };
    let n = values.len() - 1;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n + 1);
    let mut c = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut ak = Vec::with_capacity(dim);
        let mut bk = Vec::with_capacity(dim);
        let mut ck = Vec::with_capacity(dim);
        for xi in &coords {
            if k < n {
                ak.push(&moment(xi, &values[k], &values[k + 1]) * &inverses[k + 1]);
            }
            bk.push(&moment(xi, &values[k], &values[k]) * &inverses[k]);
            ck.push(if k == 0 {
                RatMatrix::zeros(values[0].len(), 0)
            } else {
                &moment(xi, &values[k], &values[k - 1]) * &inverses[k - 1]
            });
        }
        if k < n {
            a.push(ak);
        }
        b.push(bk);
        c.push(ck);
    }
    Recurrence::new(dim, basis.block_sizes(), a, b, c)
}

/// Location of the first nonzero three-term residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermFailure {
    pub degree: usize,
    pub coordinate: usize,
    pub point: usize,
    pub row: usize,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermReport {
    pub checked: usize,
    pub max_residual: Rational,
    pub first_failure: Option<ThreeTermFailure>,
}

impl ThreeTermReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn check_conformance(rec: &Recurrence, basis: &OrthoBasis) -> Result<(), RecurrenceError> {
    if rec.sizes() != basis.block_sizes().as_slice() {
        return Err(RecurrenceError::ShapeMismatch(format!(
            "recurrence block sizes {:?} differ from basis block sizes {:?}",
            rec.sizes(),
            basis.block_sizes()
        )));
    }
    if rec.dim() != basis.staircase().dim() {
        return Err(RecurrenceError::ShapeMismatch(format!(
            "recurrence dimension {} differs from basis dimension {}",
            rec.dim(),
            basis.staircase().dim()
        )));
    }
    Ok(())
}

/// Checks the three-term relation pointwise on `v` for every stored degree and coordinate.
pub fn verify_three_term(rec: &Recurrence, basis: &OrthoBasis, v: &PointSet) -> Result<ThreeTermReport, RecurrenceError> {
    check_conformance(rec, basis)?;
    if v.dim() != rec.dim() {
        return Err(RecurrenceError::ShapeMismatch(format!("point dimension {} vs {}", v.dim(), rec.dim())));
    }
    let n = rec.top_degree();
    let mut report = ThreeTermReport { checked: 0, max_residual: Rational::zero(), first_failure: None };
    for (pi, x) in v.points().iter().enumerate() {
        let vals: Vec<Vec<Rational>> = basis.blocks().iter().map(|b| b.iter().map(|p| p.eval(x)).collect()).collect();
        for k in 0..rec.bc_degrees() {
            for i in 0..rec.dim() {
                let mut rhs = rec.b(k, i).mul_vec(&vals[k]);
                if k < n {
                    add_into(&mut rhs, &rec.a(k, i).mul_vec(&vals[k + 1]));
                }
                if k > 0 {
                    add_into(&mut rhs, &rec.c(k, i).mul_vec(&vals[k - 1]));
                }
                for (row, (lhs, r)) in vals[k].iter().zip(&rhs).enumerate() {
                    let residual = (lhs * &x[i] - r).abs();
                    report.checked += 1;
                    if residual > report.max_residual {
                        report.max_residual = residual.clone();
                    }
                    if !residual.is_zero() && report.first_failure.is_none() {
                        report.first_failure = Some(ThreeTermFailure { degree: k, coordinate: i, point: pi, row, residual });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn add_into(acc: &mut [Rational], v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// Per-degree outcome of the rank condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRow {
    pub degree: usize,
    pub next_size: usize,
    pub rank_a: usize,
    /// `rank C_{k+1}`, when `C_{k+1}` is stored.
    pub rank_c: Option<usize>,
    pub dimension_bound: bool,
}

impl RankRow {
    pub fn pass(&self) -> bool {
        self.rank_a == self.next_size && self.rank_c.is_none_or(|r| r == self.next_size) && self.dimension_bound
    }
}

/// `rank A_k = rank C_{k+1} = r_{k+1}` and `d·r_k ≥ r_{k+1}` for `k < 𝐧`.
pub fn rank_condition(rec: &Recurrence) -> Vec<RankRow> {
    (0..rec.top_degree())
        .map(|k| {
            let next_size = rec.sizes()[k + 1];
            RankRow {
                degree: k,
                next_size,
                rank_a: exactlinalg::rank(&rec.composite_a(k)),
                rank_c: (k + 1 < rec.bc_degrees()).then(|| exactlinalg::rank(&rec.composite_c(k + 1))),
                dimension_bound: rec.dim() * rec.sizes()[k] >= next_size,
            }
        })
        .collect()
}

/// First `(k, i)` where `A_{k,i} H_{k+1} ≠ H_k C_{k+1,i}ᵀ`.
pub fn duality_violation(rec: &Recurrence, basis: &OrthoBasis) -> Option<(usize, usize)> {
    for k in 0..rec.top_degree().min(rec.bc_degrees().saturating_sub(1)) {
        for i in 0..rec.dim() {
            let lhs = rec.a(k, i) * basis.gram(k + 1);
            let rhs = basis.gram(k) * &rec.c(k + 1, i).transpose();
            if lhs != rhs {
                return Some((k, i));
            }
        }
    }
    None
}

/// First `(k, i)` where `G_k L_{k,i} ≠ A_{k,i} G_{k+1}`.
pub fn leading_violation(rec: &Recurrence, basis: &OrthoBasis) -> Result<Option<(usize, usize)>, RecurrenceError> {
    check_conformance(rec, basis)?;
    for k in 0..rec.top_degree() {
        for i in 0..rec.dim() {
            let shift = shift_matrix(basis.staircase(), k, i)?;
            if basis.leading(k) * &shift != rec.a(k, i) * basis.leading(k + 1) {
                return Ok(Some((k, i)));
            }
        }
    }
    Ok(None)
}
