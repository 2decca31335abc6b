use super::hahn::hahn_series;
use super::{embed, falling_neg_x, mul_linear, FamilyBasis, FamilyError};
use crate::orthogonalize::WeightFn;
use crate::rational::{binomial, factorial, int, pochhammer, Rational};
use crate::staircase::{MonomialOrder, MultiIndex, PointSet, Poly, Staircase};
use num::{One, Zero};

/// Parameters `σ_1, σ_2, σ_3 > −1` and `N ≥ 1` of the bivariate Hahn polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleHahnParams {
    sigma: [Rational; 3],
    n: usize,
}

impl TriangleHahnParams {
    pub fn new(sigma: [Rational; 3], n: usize) -> Result<Self, FamilyError> {
        if sigma.iter().any(|s| *s <= -Rational::one()) {
            return Err(FamilyError::InvalidParameter("triangle Hahn needs every sigma > -1".into()));
        }
        if n == 0 {
            return Err(FamilyError::InvalidParameter("triangle Hahn needs N >= 1".into()));
        }
        Ok(Self { sigma, n })
    }

    pub fn sigma(&self) -> &[Rational; 3] {
        &self.sigma
    }

    /// `N`.
    pub fn n(&self) -> usize {
        self.n
    }
}

/// `φ_{n,m}(x, y) = (−1)^{n+m} (σ_1+1)_n (σ_2+1)_m / ((σ_3+1)_m (σ_2+σ_3+2m+1)_n (−N)_m)
///   · Q_n(x; σ_1, σ_2+σ_3+2m+1, N−m) · (−N+x)_m Q_m(y; σ_2, σ_3, N−x)`.
///
/// The last two factors are expanded jointly, so the result is a polynomial.
pub fn triangle_hahn(n: usize, m: usize, p: &TriangleHahnParams) -> Result<Poly, FamilyError> {
    if n + m > p.n {
        return Err(FamilyError::DegreeOutOfRange { degree: n + m, max: p.n });
    }
    let [s1, s2, s3] = &p.sigma;
    let big_n = p.n as i64;
    let beta = s2 + s3 + int(2 * m as i64 + 1);
    let qx = embed(&hahn_series(n, s1, &beta, p.n - m), 2, 0);

    // (−N+x)_m Q_m(y; σ_2, σ_3, N−x) = Σ_k (−m)_k (m+σ_2+σ_3+1)_k (−y)_k / ((σ_2+1)_k k!) Π_{j=k}^{m−1} (x−N+j)
    let mm = int(m as i64);
    let top = &mm + s2 + s3 + int(1);
    let mut second = Poly::zero(2);
    for k in 0..=m {
        let c = pochhammer(&-&mm, k) * pochhammer(&top, k) / (pochhammer(&(s2 + int(1)), k) * factorial(k));
        let mut xpart = vec![Rational::one()];
        for j in k..m {
            xpart = mul_linear(&xpart, &int(j as i64 - big_n), &int(1));
        }
        let term = &embed(&xpart, 2, 0) * &embed(&falling_neg_x(k), 2, 1);
        second.axpy(&c, &term);
    }

    let sign = if (n + m).is_multiple_of(2) { int(1) } else { int(-1) };
    let pre = sign * pochhammer(&(s1 + int(1)), n) * pochhammer(&(s2 + int(1)), m)
        / (pochhammer(&(s3 + int(1)), m) * pochhammer(&beta, n) * pochhammer(&int(-big_n), m));
    Ok((&qx * &second).scale(&pre))
}

/// `binom(x+σ_1, x) binom(y+σ_2, y) binom(N−x−y+σ_3, N−x−y)`.
pub fn triangle_weight(x: usize, y: usize, p: &TriangleHahnParams) -> Rational {
    if x + y > p.n {
        return Rational::zero();
    }
    let [s1, s2, s3] = &p.sigma;
    let z = p.n - x - y;
    binomial(&(int(x as i64) + s1), x) * binomial(&(int(y as i64) + s2), y) * binomial(&(int(z as i64) + s3), z)
}

/// `{(x, y) ∈ ℕ_0²: x + y ≤ N}`.
pub fn triangle_points(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|x| (0..=n - x).map(move |y| (x, y))).collect()
}

/// All `φ_{n,m}` with `n + m ≤ N`; block `k` lists `φ_{k−j, j}` for `j` ascending.
pub fn triangle_basis(p: &TriangleHahnParams) -> Result<FamilyBasis, FamilyError> {
    let tri = triangle_points(p.n);
    let blocks = (0..=p.n)
        .map(|k| (0..=k).map(|j| triangle_hahn(k - j, j, p)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let indices = tri.iter().map(|&(x, y)| MultiIndex::new(vec![x as u32, y as u32])).collect();
    let staircase = Staircase::from_indices(MonomialOrder::grevlex(2), indices).expect("a triangle is a lower set");
    let points = PointSet::new(2, tri.iter().map(|&(x, y)| vec![int(x as i64), int(y as i64)]).collect())
        .expect("lattice points are distinct");
    let ws = tri.iter().map(|&(x, y)| triangle_weight(x, y, p)).collect();
    let weights = WeightFn::new(ws).map_err(|e| FamilyError::InvalidParameter(e.to_string()))?;
    Ok(FamilyBasis { staircase, blocks, points, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonalize::MomentFunctional;
    use crate::rational::rat;

    fn all_pairs_orthogonal(p: &TriangleHahnParams, weight: impl Fn(usize, usize) -> Rational) -> bool {
        let polys: Vec<Poly> = (0..=p.n())
            .flat_map(|k| (0..=k).map(move |j| (k - j, j)))
            .map(|(a, b)| triangle_hahn(a, b, p).unwrap())
            .collect();
        let pts = triangle_points(p.n());
        for (i, f) in polys.iter().enumerate() {
            for g in &polys[..i] {
                let s: Rational = pts
                    .iter()
                    .map(|&(x, y)| {
                        let z = [int(x as i64), int(y as i64)];
                        weight(x, y) * f.eval(&z) * g.eval(&z)
                    })
                    .sum();
                if !s.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn constant_and_degrees() {
        let p = TriangleHahnParams::new([int(0), int(0), int(0)], 2).unwrap();
        assert_eq!(triangle_hahn(0, 0, &p).unwrap(), Poly::one(2));
        for (n, m) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            assert_eq!(triangle_hahn(n, m, &p).unwrap().degree(), (n + m) as i64);
        }
        assert!(triangle_hahn(2, 1, &p).is_err());
    }

    #[test]
    fn orthogonal_on_the_triangle() {
        let p = TriangleHahnParams::new([int(0), int(0), int(0)], 2).unwrap();
        assert!(all_pairs_orthogonal(&p, |x, y| triangle_weight(x, y, &p)));
        let p = TriangleHahnParams::new([rat(1, 2), rat(3, 2), rat(1, 3)], 3).unwrap();
        assert!(all_pairs_orthogonal(&p, |x, y| triangle_weight(x, y, &p)));
        // binom(y+σ_1, y) in place of binom(y+σ_2, y) breaks orthogonality
        let [s1, _, s3] = p.sigma().clone();
        let sigma1_weight = |x: usize, y: usize| {
            let z = p.n() - x - y;
            binomial(&(int(x as i64) + &s1), x) * binomial(&(int(y as i64) + &s1), y) * binomial(&(int(z as i64) + &s3), z)
        };
        assert!(!all_pairs_orthogonal(&p, sigma1_weight));
    }

    #[test]
    fn basis_blocks() {
        let p = TriangleHahnParams::new([rat(1, 2), rat(3, 2), rat(1, 3)], 3).unwrap();
        let fb = triangle_basis(&p).unwrap();
        assert_eq!(fb.staircase.block_sizes(), vec![1, 2, 3, 4]);
        let l: MomentFunctional = fb.functional();
        assert!(fb.basis().unwrap().orthogonality_report(&l).pass());
    }
}
