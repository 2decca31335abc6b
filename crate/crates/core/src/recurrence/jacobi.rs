use super::{Recurrence, RecurrenceError};
use crate::exactlinalg::{self, RatMatrix};
use crate::orthogonalize::OrthoBasis;
use crate::rational::Rational;
use num::Zero;

/// Matrix of multiplication by `x_i` on `ℝ[V]` in the basis `ℙ_0, …, ℙ_𝐧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiOperator {
    pub coordinate: usize,
    pub matrix: RatMatrix,
}

/// Block tridiagonal `J_i` with row block `k` holding `C_{k,i}`, `B_{k,i}`, `A_{k,i}`.
///
/// Needs the top-degree blocks: the truncated operator is not the
/// multiplication operator and does not commute in general.
pub fn jacobi_operators(rec: &Recurrence) -> Result<Vec<JacobiOperator>, RecurrenceError> {
    if !rec.has_top_blocks() {
        return Err(RecurrenceError::MissingTopBlocks);
    }
    let sizes = rec.sizes();
    let mut offsets = vec![0];
    for r in sizes {
        offsets.push(offsets.last().unwrap() + r);
    }
    let total = *offsets.last().unwrap();
    let n = rec.top_degree();
    Ok((0..rec.dim())
        .map(|i| {
            let mut m = RatMatrix::zeros(total, total);
            for k in 0..=n {
                if k > 0 {
                    m.set_block(offsets[k], offsets[k - 1], rec.c(k, i));
                }
                m.set_block(offsets[k], offsets[k], rec.b(k, i));
                if k < n {
                    m.set_block(offsets[k], offsets[k + 1], rec.a(k, i));
                }
            }
            JacobiOperator { coordinate: i, matrix: m }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    /// Pairs `(i, j)`, `i < j`, whose commutator is nonzero.
    pub failures: Vec<(usize, usize)>,
    pub pairs: usize,
}

impl CommuteReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn commute_check(ops: &[JacobiOperator]) -> CommuteReport {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (a, ja) in ops.iter().enumerate() {
        for jb in &ops[a + 1..] {
            pairs += 1;
            if &ja.matrix * &jb.matrix != &jb.matrix * &ja.matrix {
                failures.push((ja.coordinate, jb.coordinate));
            }
        }
    }
    CommuteReport { failures, pairs }
}

fn bilinear(u: &[Rational], m: &RatMatrix, v: &[Rational]) -> Rational {
    u.iter().zip(m.mul_vec(v)).map(|(a, b)| a * b).sum()
}

/// Both sides of the Christoffel–Darboux identity at `x, y ∈ V`:
///
/// `Σ_{j≤k} ℙ_j(x)ᵀ H_j⁻¹ ℙ_j(y)` and
/// `[ℙ_{k+1}(x)ᵀ A_{k,i}ᵀ H_k⁻¹ ℙ_k(y) − ℙ_k(x)ᵀ H_k⁻¹ A_{k,i} ℙ_{k+1}(y)] / (x_i − y_i)`,
/// with `A_{𝐧,i} = 0`.
pub fn christoffel_darboux(
    basis: &OrthoBasis,
    rec: &Recurrence,
    x: &[Rational],
    y: &[Rational],
    i: usize,
    k: usize,
) -> Result<(Rational, Rational), RecurrenceError> {
    let n = rec.top_degree();
    if k > n {
        return Err(RecurrenceError::DegreeOutOfRange { degree: k, top: n });
    }
    if i >= rec.dim() {
        return Err(RecurrenceError::CoordinateOutOfRange { coordinate: i, dim: rec.dim() });
    }
    if x.len() != rec.dim() || y.len() != rec.dim() {
        return Err(RecurrenceError::ShapeMismatch("point dimension".into()));
    }
    if x[i] == y[i] {
        return Err(RecurrenceError::CoincidentCoordinate(i));
    }
    let eval = |j: usize, z: &[Rational]| -> Vec<Rational> { basis.block(j).iter().map(|p| p.eval(z)).collect() };
    let hinv = |j: usize| exactlinalg::inverse(basis.gram(j)).map_err(|_| RecurrenceError::SingularGram(j));
    let mut lhs = Rational::zero();
    for j in 0..=k {
        lhs += bilinear(&eval(j, x), &hinv(j)?, &eval(j, y));
    }
    if k == n {
        return Ok((lhs, Rational::zero()));
    }
    let a = rec.a(k, i);
    let hk = hinv(k)?;
    let first = bilinear(&eval(k + 1, x), &(&a.transpose() * &hk), &eval(k, y));
    let second = bilinear(&eval(k, x), &(&hk * a), &eval(k + 1, y));
    Ok((lhs, (first - second) / (&x[i] - &y[i])))
}
