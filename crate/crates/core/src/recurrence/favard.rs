use super::{Recurrence, RecurrenceError};
use crate::exactlinalg::{self, RatMatrix};
use crate::orthogonalize::{MomentFunctional, WeightFn};
use crate::rational::{int, Rational};
use crate::staircase::{Interpolator, PointSet, Poly, Staircase};
use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn apply(m: &RatMatrix, v: &[Poly], dim: usize) -> Vec<Poly> {
    (0..m.rows())
        .map(|r| {
            let mut acc = Poly::zero(dim);
            for (c, p) in m.row(r).iter().zip(v) {
                if !c.is_zero() {
                    acc.axpy(c, p);
                }
            }
            acc
        })
        .collect()
}

fn sub_into(acc: &mut [Poly], v: &[Poly]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a - b;
    }
}

/// `x_i ℙ_k − B_{k,i} ℙ_k − C_{k,i} ℙ_{k−1}`.
fn residual_part(rec: &Recurrence, blocks: &[Vec<Poly>], k: usize, i: usize) -> Vec<Poly> {
    let dim = rec.dim();
    let mut out: Vec<Poly> = blocks[k].iter().map(|p| p.mul_var(i)).collect();
    sub_into(&mut out, &apply(rec.b(k, i), &blocks[k], dim));
    if k > 0 {
        sub_into(&mut out, &apply(rec.c(k, i), &blocks[k - 1], dim));
    }
    out
}

/// Rebuilds `ℙ̂_0 = 1, ℙ̂_1, …, ℙ̂_𝐧` from recurrence blocks by
/// `ℙ̂_{k+1} = Σ_i D_{k,i}ᵀ (x_i ℙ̂_k − B_{k,i} ℙ̂_k − C_{k,i} ℙ̂_{k−1})`,
/// where `Dᵀ_k` is the first-rows left inverse of `A_k`.
///
/// With a `reference` each block is reduced to its normal form on that point
/// set; otherwise raw polynomials are returned.
pub fn favard_reconstruct(
    rec: &Recurrence,
    lambda: &Staircase,
    reference: Option<&Interpolator>,
) -> Result<Vec<Vec<Poly>>, RecurrenceError> {
    if rec.sizes() != lambda.block_sizes().as_slice() || rec.dim() != lambda.dim() {
        return Err(RecurrenceError::ShapeMismatch(format!(
            "recurrence block sizes {:?} differ from staircase block sizes {:?}",
            rec.sizes(),
            lambda.block_sizes()
        )));
    }
    if rec.sizes()[0] != 1 {
        return Err(RecurrenceError::ShapeMismatch("r_0 must be 1".into()));
    }
    let dim = rec.dim();
    let mut blocks = vec![vec![Poly::one(dim)]];
    for k in 0..rec.top_degree() {
        let dt = exactlinalg::left_inverse(&rec.composite_a(k)).map_err(|_| RecurrenceError::RankDeficient(k))?;
        let rk = rec.sizes()[k];
        let mut next = vec![Poly::zero(dim); rec.sizes()[k + 1]];
        for i in 0..dim {
            let cols: Vec<usize> = (i * rk..(i + 1) * rk).collect();
            let rows: Vec<usize> = (0..dt.rows()).collect();
            let di = dt.submatrix(&rows, &cols);
            for (acc, p) in next.iter_mut().zip(apply(&di, &residual_part(rec, &blocks, k, i), dim)) {
                *acc = &*acc + &p;
            }
        }
        if let Some(interp) = reference {
            next = next.iter().map(|p| interp.normal_form(p)).collect::<Result<_, _>>()?;
        }
        blocks.push(next);
    }
    Ok(blocks)
}

/// `g_{k,i} = x_i ℙ_k − A_{k,i} ℙ_{k+1} − B_{k,i} ℙ_k − C_{k,i} ℙ_{k−1}` for every stored degree.
///
/// A realizing point set lies in their common zero set.
pub fn ideal_generators(rec: &Recurrence, blocks: &[Vec<Poly>]) -> Vec<Poly> {
    let n = rec.top_degree();
    let mut out = Vec::new();
    for k in 0..rec.bc_degrees() {
        for i in 0..rec.dim() {
            let mut g = residual_part(rec, blocks, k, i);
            if k < n {
                sub_into(&mut g, &apply(rec.a(k, i), &blocks[k + 1], rec.dim()));
            }
            out.extend(g.into_iter().filter(|p| !p.is_zero()));
        }
    }
    out
}

/// Settings for [`recover_measure`].
#[derive(Clone, Debug)]
pub struct RecoveryOptions {
    pub seed: u64,
    pub max_attempts: usize,
    /// Largest lattice box enumerated when no candidates are supplied.
    pub max_pool: usize,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        Self { seed: 0, max_attempts: 64, max_pool: 250_000 }
    }
}

/// Finds `N = |Λ|` points and nonzero weights realizing `𝓛P_α = δ_{α,0}` for the given blocks.
///
/// Candidates are the supplied pool, or the lattice box `{−N..N}^d` in seeded
/// order; only candidates on the zero set of [`ideal_generators`] are used.
/// Each attempt draws `N` of them, solves `[P_α(x_j)] λ = e_0` exactly, and is
/// accepted when the system is nonsingular, every `λ_j ≠ 0`, and the blocks
/// are orthogonal for the resulting functional.
pub fn recover_measure(
    rec: &Recurrence,
    blocks: &[Vec<Poly>],
    candidates: Option<&PointSet>,
    options: &RecoveryOptions,
) -> Result<MomentFunctional, RecurrenceError> {
    let dim = rec.dim();
    let needed: usize = blocks.iter().map(Vec::len).sum();
    let generators = ideal_generators(rec, blocks);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let pool: Vec<Vec<Rational>> = match candidates {
        Some(pool) => pool.points().to_vec(),
        None => lattice_pool(dim, needed as i64, options.max_pool, &mut rng),
    };
    let mut variety: Vec<Vec<Rational>> =
        pool.into_iter().filter(|x| generators.iter().all(|g| g.eval(x).is_zero())).collect();
    let on_variety = variety.len();
    let exhausted = |attempts| RecurrenceError::ExhaustedAttempts { attempts, on_variety, needed };
    if on_variety < needed {
        return Err(exhausted(0));
    }
    let polys: Vec<&Poly> = blocks.iter().flatten().collect();
    let mut rhs = RatMatrix::zeros(needed, 1);
    rhs.set(0, 0, Rational::one());
    let mut attempts = 0;
    while attempts < options.max_attempts {
        attempts += 1;
        variety.shuffle(&mut rng);
        let chosen = &variety[..needed];
        let m = RatMatrix::from_fn(needed, needed, |a, j| polys[a].eval(&chosen[j]));
        if let Ok(sol) = exactlinalg::solve(&m, &rhs) {
            let lambda = sol.column(0);
            if lambda.iter().all(|v| !v.is_zero()) {
                let points = PointSet::new(dim, chosen.to_vec())?;
                let l = MomentFunctional::new(points, WeightFn::new(lambda)?)?;
                if orthogonal_under(&l, blocks) {
                    return Ok(l);
                }
            }
        }
        if on_variety == needed {
            break;
        }
    }
    Err(exhausted(attempts))
}

fn orthogonal_under(l: &MomentFunctional, blocks: &[Vec<Poly>]) -> bool {
    let values: Vec<Vec<Vec<Rational>>> = blocks.iter().map(|b| b.iter().map(|p| l.values(p)).collect()).collect();
    for k in 0..values.len() {
        for j in 0..k {
            if !l.gram_of_values(&values[k], &values[j]).is_zero() {
                return false;
            }
        }
        let h = l.gram_of_values(&values[k], &values[k]);
        if exactlinalg::rank(&h) < h.rows() {
            return false;
        }
    }
    true
}

fn lattice_pool(dim: usize, radius: i64, max_pool: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    use rand::Rng;
    let side = (2 * radius + 1) as usize;
    let total = (side as f64).powi(dim as i32);
    if total <= max_pool as f64 {
        let count = side.pow(dim as u32);
        let mut pts: Vec<Vec<Rational>> = (0..count)
            .map(|mut idx| {
                (0..dim)
                    .map(|_| {
                        let c = (idx % side) as i64 - radius;
                        idx /= side;
                        int(c)
                    })
                    .collect()
            })
            .collect();
        pts.shuffle(rng);
        pts
    } else {
        let mut seen = std::collections::HashSet::new();
        let mut pts = Vec::with_capacity(max_pool);
        while pts.len() < max_pool {
            let p: Vec<i64> = (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect();
            if seen.insert(p.clone()) {
                pts.push(p.into_iter().map(int).collect());
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::tests::eight_points;
    use crate::recurrence::compute_recurrence;
    use crate::rational::rat;

    #[test]
    fn round_trip_with_reference() {
        let (l, basis) = eight_points();
        let rec = compute_recurrence(&basis, &l).unwrap();
        let interp = Interpolator::new(l.points(), basis.staircase()).unwrap();
        let blocks = favard_reconstruct(&rec, basis.staircase(), Some(&interp)).unwrap();
        assert_eq!(blocks.as_slice(), basis.blocks());
        let m = recover_measure(&rec, &blocks, Some(l.points()), &RecoveryOptions::default()).unwrap();
        assert!(m.weights().values().iter().all(|w| *w == rat(1, 8)));
    }

    #[test]
    fn abstract_round_trip_uses_the_lattice() {
        let (l, basis) = eight_points();
        let rec = compute_recurrence(&basis, &l).unwrap();
        let blocks = favard_reconstruct(&rec, basis.staircase(), None).unwrap();
        let m = recover_measure(&rec, &blocks, None, &RecoveryOptions::default()).unwrap();
        let mut got = m.points().points().to_vec();
        let mut want = l.points().points().to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(m.weights().values().iter().all(|w| *w == rat(1, 8)));
    }

    #[test]
    fn constant_only() {
        let lam = Staircase::from_indices(
            crate::staircase::MonomialOrder::grevlex(2),
            vec![crate::staircase::MultiIndex::zero(2)],
        )
        .unwrap();
        let rec = Recurrence::new(
            2,
            vec![1],
            vec![],
            vec![vec![RatMatrix::from_i64(&[&[1]]), RatMatrix::from_i64(&[&[-1]])]],
            vec![vec![RatMatrix::zeros(1, 0), RatMatrix::zeros(1, 0)]],
        )
        .unwrap();
        let blocks = favard_reconstruct(&rec, &lam, None).unwrap();
        let m = recover_measure(&rec, &blocks, None, &RecoveryOptions::default()).unwrap();
        assert_eq!(m.points().points(), &[vec![int(1), int(-1)]]);
        assert_eq!(m.weights().values(), &[int(1)]);
    }

    #[test]
    fn rank_deficient_recurrence() {
        let (l, basis) = eight_points();
        let mut rec = compute_recurrence(&basis, &l).unwrap();
        for i in 0..2 {
            rec.a_blocks_mut()[1][i] = RatMatrix::zeros(2, 3);
        }
        assert_eq!(
            favard_reconstruct(&rec, basis.staircase(), None),
            Err(RecurrenceError::RankDeficient(1))
        );
    }
}
