use super::{existence_check, MomentFunctional, OrthoError};
use crate::exactlinalg::{self, RatMatrix};
use crate::rational::Rational;
use crate::staircase::{MonomialOrder, Poly, Staircase};
use num::{BigInt, Integer, One, Signed, Zero};

/// How constructed blocks are normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scaling {
    /// Primitive integer coefficients with positive leading coefficient.
    #[default]
    Canonical,
    /// Monic leading coefficient as produced by Gram–Schmidt.
    Raw,
}

/// The factor `c` such that `c·p` has coprime integer coefficients and a positive leading term.
pub fn canonical_scale_factor(p: &Poly, order: &MonomialOrder) -> Result<Rational, OrthoError> {
    let (_, lead) = p.leading(order).ok_or(OrthoError::ZeroPolynomial)?;
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let gcd = p
        .terms()
        .map(|(_, c)| (c.numer() * (&lcm / c.denom())).abs())
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    let factor = Rational::new(lcm, gcd);
    Ok(if lead.is_negative() { -factor } else { factor })
}

pub fn canonical_scale(p: &Poly, order: &MonomialOrder) -> Result<Poly, OrthoError> {
    Ok(p.scale(&canonical_scale_factor(p, order)?))
}

/// Orthogonal degree blocks `ℙ_0, …, ℙ_𝐧` with their Gram and leading-coefficient matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoBasis {
    staircase: Staircase,
    blocks: Vec<Vec<Poly>>,
    gram: Vec<RatMatrix>,
    leading: Vec<RatMatrix>,
    scale_factors: Vec<Vec<Rational>>,
}

impl OrthoBasis {
    /// Wraps given blocks, computing `H_k` under `l` and `G_k` from the coefficients.
    pub fn from_blocks(staircase: Staircase, blocks: Vec<Vec<Poly>>, l: &MomentFunctional) -> Result<Self, OrthoError> {
        let values: Vec<Vec<Vec<Rational>>> =
            blocks.iter().map(|b| b.iter().map(|p| l.values(p)).collect()).collect();
        let gram = values.iter().map(|v| l.gram_of_values(v, v)).collect();
        let ones = blocks.iter().map(|b| vec![Rational::one(); b.len()]).collect();
        Self::assemble(staircase, blocks, gram, ones)
    }

    fn assemble(
        staircase: Staircase,
        blocks: Vec<Vec<Poly>>,
        gram: Vec<RatMatrix>,
        scale_factors: Vec<Vec<Rational>>,
    ) -> Result<Self, OrthoError> {
        let sizes = staircase.block_sizes();
        if blocks.len() != sizes.len() {
            return Err(OrthoError::BlockSize {
                degree: blocks.len().min(sizes.len()),
                expected: sizes.get(blocks.len()).copied().unwrap_or(0),
                found: blocks.get(sizes.len()).map_or(0, Vec::len),
            });
        }
        let mut leading = Vec::with_capacity(blocks.len());
        for (k, block) in blocks.iter().enumerate() {
            if block.len() != sizes[k] {
                return Err(OrthoError::BlockSize { degree: k, expected: sizes[k], found: block.len() });
            }
            let up_to = staircase.up_to(k);
            for (index, p) in block.iter().enumerate() {
                if p.dim() != staircase.dim() {
                    return Err(OrthoError::DimensionMismatch { expected: staircase.dim(), found: p.dim() });
                }
                if p.coefficients_on(up_to).is_none() {
                    return Err(OrthoError::NotOnStaircase { degree: k, index });
                }
            }
            let mons = staircase.block(k);
            leading.push(RatMatrix::from_fn(block.len(), mons.len(), |i, j| block[i].coeff(&mons[j])));
        }
        Ok(Self { staircase, blocks, gram, leading, scale_factors })
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn top_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn blocks(&self) -> &[Vec<Poly>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[Poly] {
        &self.blocks[k]
    }

    pub fn into_blocks(self) -> Vec<Vec<Poly>> {
        self.blocks
    }

    /// All polynomials, degree by degree.
    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.blocks.iter().flatten()
    }

    /// `H_k = 𝓛(ℙ_k ℙ_kᵀ)`.
    pub fn gram(&self, k: usize) -> &RatMatrix {
        &self.gram[k]
    }

    /// `G_k`, coefficients of `ℙ_k` on `x^{Λ_k}`.
    pub fn leading(&self, k: usize) -> &RatMatrix {
        &self.leading[k]
    }

    /// `G_k` before scaling.
    pub fn leading_unscaled(&self, k: usize) -> RatMatrix {
        let inv: Vec<Rational> = self.scale_factors[k].iter().map(|s| s.recip()).collect();
        &RatMatrix::diagonal(&inv) * &self.leading[k]
    }

    /// Row factors applied by the scaling step.
    pub fn scale_factors(&self, k: usize) -> &[Rational] {
        &self.scale_factors[k]
    }

    /// Values of every block at the points of `l`.
    pub fn values(&self, l: &MomentFunctional) -> Vec<Vec<Vec<Rational>>> {
        self.blocks.iter().map(|b| b.iter().map(|p| l.values(p)).collect()).collect()
    }

    /// Checks block orthogonality and invertibility of `H_k`, `G_k` under `l`.
    pub fn orthogonality_report(&self, l: &MomentFunctional) -> OrthogonalityReport {
        let values = self.values(l);
        let mut report = OrthogonalityReport::default();
        for k in 0..values.len() {
            for j in 0..k {
                if !l.gram_of_values(&values[k], &values[j]).is_zero() && report.first_violation.is_none() {
                    report.first_violation = Some((k, j));
                }
            }
            let h = l.gram_of_values(&values[k], &values[k]);
            if exactlinalg::rank(&h) < h.rows() && report.singular_gram.is_none() {
                report.singular_gram = Some(k);
            }
            let g = &self.leading[k];
            if exactlinalg::rank(g) < g.rows() && report.singular_leading.is_none() {
                report.singular_leading = Some(k);
            }
        }
        report
    }
}

/// Outcome of [`OrthoBasis::orthogonality_report`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// First pair `(k, j)`, `j < k`, with `𝓛(ℙ_k ℙ_jᵀ) ≠ 0`.
    pub first_violation: Option<(usize, usize)>,
    pub singular_gram: Option<usize>,
    pub singular_leading: Option<usize>,
}

impl OrthogonalityReport {
    pub fn pass(&self) -> bool {
        self.first_violation.is_none() && self.singular_gram.is_none() && self.singular_leading.is_none()
    }
}

struct Block {
    polys: Vec<Poly>,
    values: Vec<Vec<Rational>>,
}

/// Exact orthogonal basis of `ℝ[V]` for `l`, indexed by `lambda`.
///
/// Each monomial of `Λ_k` is projected off the previous blocks. When `H_k`
/// factors as `S D Sᵀ` the block is replaced by `S⁻¹ℙ_k`, making it internally
/// orthogonal; otherwise it is kept as is.
pub fn construct_orthogonal(
    l: &MomentFunctional,
    lambda: &Staircase,
    scaling: Scaling,
) -> Result<OrthoBasis, OrthoError> {
    if l.dim() != lambda.dim() {
        return Err(OrthoError::DimensionMismatch { expected: l.dim(), found: lambda.dim() });
    }
    if let Some(k) = existence_check(l, lambda).first_failure() {
        return Err(OrthoError::ExistenceFailure(k));
    }
    let mut done: Vec<Block> = Vec::new();
    let mut inverses: Vec<RatMatrix> = Vec::new();
    let mut grams = Vec::new();
    let mut factors = Vec::new();
    for k in 0..=lambda.top_degree() {
        let mut polys = Vec::new();
        let mut values = Vec::new();
        for alpha in lambda.block(k) {
            let mut p = Poly::monomial(alpha.clone(), Rational::one());
            let mut pv = l.values(&p);
            let orig = pv.clone();
            for (block, hinv) in done.iter().zip(&inverses) {
                let m: Vec<Rational> = block.values.iter().map(|q| l.pair_values(&orig, q)).collect();
                let c = hinv.vec_mul(&m);
                for ((ci, q), qv) in c.iter().zip(&block.polys).zip(&block.values) {
                    if ci.is_zero() {
                        continue;
                    }
                    p.axpy(&-ci, q);
                    for (a, b) in pv.iter_mut().zip(qv) {
                        *a -= ci * b;
                    }
                }
            }
            polys.push(p);
            values.push(pv);
        }
        let h = l.gram_of_values(&values, &values);
        if let Ok((s, _)) = exactlinalg::symmetric_factor(&h) {
            for i in 0..polys.len() {
                for j in 0..i {
                    let c = s.get(i, j).clone();
                    if c.is_zero() {
                        continue;
                    }
                    let (head, tail) = polys.split_at_mut(i);
                    tail[0].axpy(&-&c, &head[j]);
                    let (head, tail) = values.split_at_mut(i);
                    for (a, b) in tail[0].iter_mut().zip(&head[j]) {
                        *a -= &c * b;
                    }
                }
            }
        }
        let scale: Vec<Rational> = match scaling {
            Scaling::Canonical => {
                polys.iter().map(|p| canonical_scale_factor(p, lambda.order())).collect::<Result<_, _>>()?
            }
            Scaling::Raw => vec![Rational::one(); polys.len()],
        };
        for ((p, v), s) in polys.iter_mut().zip(values.iter_mut()).zip(&scale) {
            if !s.is_one() {
                *p = p.scale(s);
                v.iter_mut().for_each(|a| *a *= s);
            }
        }
        let h = l.gram_of_values(&values, &values);
        let hinv = exactlinalg::inverse(&h).map_err(|_| OrthoError::ExistenceFailure(k))?;
        grams.push(h);
        inverses.push(hinv);
        factors.push(scale);
        done.push(Block { polys, values });
    }
    let blocks = done.into_iter().map(|b| b.polys).collect();
    OrthoBasis::assemble(lambda.clone(), blocks, grams, factors)
}
