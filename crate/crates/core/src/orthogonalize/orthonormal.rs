use super::{MomentFunctional, OrthoBasis, OrthoError};
use crate::exactlinalg::{self, RatMatrix};
use crate::rational::{to_f64, Rational};
use crate::staircase::{FloatPoly, Poly, Staircase};
use nalgebra::DMatrix;
use num::Zero;

/// Orthonormal blocks with floating-point coefficients.
#[derive(Clone, Debug)]
pub struct FloatBasis {
    staircase: Staircase,
    blocks: Vec<Vec<FloatPoly>>,
}

impl FloatBasis {
    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn blocks(&self) -> &[Vec<FloatPoly>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[FloatPoly] {
        &self.blocks[k]
    }

    pub fn top_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Values of every block at the points of `l`.
    pub fn values(&self, l: &MomentFunctional) -> Vec<Vec<Vec<f64>>> {
        let pts: Vec<Vec<f64>> = l.points().points().iter().map(|x| x.iter().map(to_f64).collect()).collect();
        self.blocks
            .iter()
            .map(|b| b.iter().map(|p| pts.iter().map(|x| p.eval(x)).collect()).collect())
            .collect()
    }

    /// `𝓛(ℙ_k ℙ_jᵀ)` in floating point.
    pub fn gram(&self, l: &MomentFunctional, k: usize, j: usize) -> DMatrix<f64> {
        let values = self.values(l);
        float_gram(l, &values[k], &values[j])
    }

    /// Largest entrywise deviation of `𝓛(ℙ_k ℙ_jᵀ)` from `δ_{kj} I` over all block pairs.
    pub fn identity_deviation(&self, l: &MomentFunctional) -> f64 {
        let values = self.values(l);
        let mut worst = 0.0f64;
        for k in 0..values.len() {
            for j in 0..=k {
                let g = float_gram(l, &values[k], &values[j]);
                for r in 0..g.nrows() {
                    for c in 0..g.ncols() {
                        let target = if k == j && r == c { 1.0 } else { 0.0 };
                        worst = worst.max((g[(r, c)] - target).abs());
                    }
                }
            }
        }
        worst
    }
}

pub(crate) fn float_gram(l: &MomentFunctional, f: &[Vec<f64>], g: &[Vec<f64>]) -> DMatrix<f64> {
    let w: Vec<f64> = l.weights().values().iter().map(to_f64).collect();
    DMatrix::from_fn(f.len(), g.len(), |i, j| {
        f[i].iter().zip(&g[j]).zip(&w).map(|((a, b), w)| a * b * w).sum()
    })
}

/// Orthonormal basis `𝓛(ℙ_k ℙ_kᵀ) = I`.
///
/// Each block is diagonalized exactly as `S⁻¹ℙ_k` from `H_k = S D Sᵀ`, then
/// row `i` is divided by `√D_i` in floating point.
pub fn orthonormalize(basis: &OrthoBasis, l: &MomentFunctional) -> Result<FloatBasis, OrthoError> {
    if !l.weights().is_positive() {
        return Err(OrthoError::NotPositive);
    }
    let mut blocks = Vec::with_capacity(basis.blocks().len());
    for block in basis.blocks() {
        let values: Vec<Vec<Rational>> = block.iter().map(|p| l.values(p)).collect();
        let h = l.gram_of_values(&values, &values);
        let (s, d) = exactlinalg::symmetric_factor(&h).map_err(|_| OrthoError::NotPositive)?;
        let diag = diagonalize(block, &s);
        let out = diag
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let di = d.get(i, i);
                if di.is_zero() {
                    return Err(OrthoError::NotPositive);
                }
                Ok(FloatPoly::from_poly(p, 1.0 / to_f64(di).sqrt()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(out);
    }
    Ok(FloatBasis { staircase: basis.staircase().clone(), blocks })
}

/// `S⁻¹ℙ` for unit lower triangular `S`, by forward substitution.
fn diagonalize(block: &[Poly], s: &RatMatrix) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::with_capacity(block.len());
    for (i, p) in block.iter().enumerate() {
        let mut q = p.clone();
        for (j, prev) in out.iter().enumerate() {
            let c = s.get(i, j);
            if !c.is_zero() {
                q.axpy(&-c, prev);
            }
        }
        out.push(q);
    }
    out
}
