use super::{embed, Family, FamilyError};
use crate::exactlinalg::RatMatrix;
use crate::orthogonalize::{MomentFunctional, OrthoBasis, OrthoError, WeightFn};
use crate::rational::{int, Rational};
use crate::recurrence::Recurrence;
use crate::staircase::{MonomialOrder, MultiIndex, PointSet, Poly, Staircase};

/// A closed-form bivariate basis with its point set and weights.
#[derive(Clone, Debug)]
pub struct FamilyBasis {
    pub staircase: Staircase,
    pub blocks: Vec<Vec<Poly>>,
    pub points: PointSet,
    pub weights: WeightFn,
}

impl FamilyBasis {
    pub fn functional(&self) -> MomentFunctional {
        MomentFunctional::new(self.points.clone(), self.weights.clone()).expect("grid and weights have equal length")
    }

    pub fn basis(&self) -> Result<OrthoBasis, OrthoError> {
        OrthoBasis::from_blocks(self.staircase.clone(), self.blocks.clone(), &self.functional())
    }
}

/// `x`-degrees `j` in block `k`: `max(0, k−m) ..= min(k, n)`.
fn block_range(k: usize, n: usize, m: usize) -> std::ops::RangeInclusive<usize> {
    k.saturating_sub(m)..=k.min(n)
}

fn check_degrees(fx: &Family, fy: &Family, n: usize, m: usize) -> Result<(), FamilyError> {
    for (f, d) in [(fx, n), (fy, m)] {
        if let Some(max) = f.max_degree() {
            if d > max {
                return Err(FamilyError::DegreeOutOfRange { degree: d, max });
            }
        }
    }
    Ok(())
}

/// Block `k` is `p_j(x) q_{k−j}(y)` for `j` ascending, so the sizes are
/// `k+1` up to `min(n, m)`, then constant, then decreasing to 1.
///
/// The grid is the product of the supports; an infinite support is cut at `truncation`.
pub fn product_basis(fx: &Family, fy: &Family, n: usize, m: usize, truncation: usize) -> Result<FamilyBasis, FamilyError> {
    check_degrees(fx, fy, n, m)?;
    let px: Vec<Vec<Rational>> = (0..=n).map(|j| fx.coeffs(j)).collect::<Result<_, _>>()?;
    let py: Vec<Vec<Rational>> = (0..=m).map(|l| fy.coeffs(l)).collect::<Result<_, _>>()?;
    let blocks = (0..=n + m)
        .map(|k| block_range(k, n, m).map(|j| &embed(&px[j], 2, 0) * &embed(&py[k - j], 2, 1)).collect())
        .collect();
    let indices = (0..=n)
        .flat_map(|j| (0..=m).map(move |l| MultiIndex::new(vec![j as u32, l as u32])))
        .collect();
    let staircase = Staircase::from_indices(MonomialOrder::grevlex(2), indices).expect("a box is a lower set");
    let mut pts = Vec::new();
    let mut ws = Vec::new();
    for x in fx.support(truncation) {
        for y in fy.support(truncation) {
            pts.push(vec![int(x as i64), int(y as i64)]);
            ws.push(fx.weight(x) * fy.weight(y));
        }
    }
    let points = PointSet::new(2, pts).expect("grid points are distinct");
    let weights = WeightFn::new(ws).map_err(|e| FamilyError::InvalidParameter(e.to_string()))?;
    Ok(FamilyBasis { staircase, blocks, points, weights })
}

struct Coefficients {
    x: Vec<(Rational, Rational, Rational)>,
    y: Vec<(Rational, Rational, Rational)>,
}

impl Coefficients {
    fn new(fx: &Family, fy: &Family, n: usize, m: usize) -> Result<Self, FamilyError> {
        Ok(Self {
            x: (0..=n).map(|j| fx.recurrence(j)).collect::<Result<_, _>>()?,
            y: (0..=m).map(|l| fy.recurrence(l)).collect::<Result<_, _>>()?,
        })
    }
}

fn a_block(co: &Coefficients, n: usize, m: usize, k: usize, i: usize) -> RatMatrix {
    let rows = block_range(k, n, m);
    let cols = block_range(k + 1, n, m);
    let mut out = RatMatrix::zeros(rows.clone().count(), cols.clone().count());
    for (r, j) in rows.enumerate() {
        let (target, value) = match i {
            0 => (j + 1, &co.x[j].0),
            _ => (j, &co.y[k - j].0),
        };
        if cols.contains(&target) {
            out.set(r, target - cols.start(), value.clone());
        }
    }
    out
}

/// `A_{k,i}` for the product basis, assembled from the univariate coefficients.
///
/// Shapes: `(k+1)×(k+2)` for `k < m`, `(m+1)×(m+1)` for `m ≤ k < n`, and
/// `(n+m−k+1)×(n+m−k)` for `n ≤ k < n+m` (when `n ≥ m`).
pub fn product_recurrence_blocks(
    fx: &Family,
    fy: &Family,
    n: usize,
    m: usize,
    k: usize,
    i: usize,
) -> Result<RatMatrix, FamilyError> {
    check_degrees(fx, fy, n, m)?;
    if k >= n + m {
        return Err(FamilyError::DegreeOutOfRange { degree: k, max: (n + m).saturating_sub(1) });
    }
    if i > 1 {
        return Err(FamilyError::InvalidParameter(format!("coordinate {i} in two variables")));
    }
    Ok(a_block(&Coefficients::new(fx, fy, n, m)?, n, m, k, i))
}

/// All blocks `A`, `B`, `C` of the product basis, including the top degree.
pub fn product_recurrence(fx: &Family, fy: &Family, n: usize, m: usize) -> Result<Recurrence, FamilyError> {
    check_degrees(fx, fy, n, m)?;
    let co = Coefficients::new(fx, fy, n, m)?;
    let top = n + m;
    let sizes: Vec<usize> = (0..=top).map(|k| block_range(k, n, m).count()).collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for k in 0..=top {
        if k < top {
            a.push((0..2).map(|i| a_block(&co, n, m, k, i)).collect());
        }
        let rows = block_range(k, n, m);
        let bx = rows.clone().map(|j| co.x[j].1.clone()).collect::<Vec<_>>();
        let by = rows.clone().map(|j| co.y[k - j].1.clone()).collect::<Vec<_>>();
        b.push(vec![RatMatrix::diagonal(&bx), RatMatrix::diagonal(&by)]);
        let mut ck = Vec::new();
        for i in 0..2 {
            if k == 0 {
                ck.push(RatMatrix::zeros(1, 0));
                continue;
            }
            let cols = block_range(k - 1, n, m);
            let mut mat = RatMatrix::zeros(sizes[k], sizes[k - 1]);
            for (r, j) in rows.clone().enumerate() {
                let (target, value) = match i {
                    0 if j > 0 => (j - 1, &co.x[j].2),
                    1 if k - j > 0 => (j, &co.y[k - j].2),
                    _ => continue,
                };
                if cols.contains(&target) {
                    mat.set(r, target - cols.start(), value.clone());
                }
            }
            ck.push(mat);
        }
        c.push(ck);
    }
    Ok(Recurrence::new(2, sizes, a, b, c).expect("product blocks have conforming shapes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg;
    use crate::families::HahnParams;
    use crate::recurrence::{compute_recurrence, rank_condition, verify_three_term};
    use crate::rational::rat;

    fn hahn(a: Rational, b: Rational, n: usize) -> Family {
        Family::Hahn(HahnParams::new(a, b, n).unwrap())
    }

    #[test]
    fn block_sizes() {
        let pb = product_basis(&hahn(int(0), int(0), 3), &hahn(int(1), int(0), 2), 3, 2, 0).unwrap();
        let sizes: Vec<usize> = pb.blocks.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3, 3, 2, 1]);
        assert_eq!(pb.staircase.block_sizes(), sizes);
    }

    #[test]
    fn product_hahn_matches_generic_recurrence() {
        let fx = hahn(rat(1, 2), int(0), 3);
        let fy = hahn(int(0), rat(3, 2), 2);
        let pb = product_basis(&fx, &fy, 3, 2, 0).unwrap();
        let l = pb.functional();
        let basis = pb.basis().unwrap();
        assert!(basis.orthogonality_report(&l).pass());
        let generic = compute_recurrence(&basis, &l).unwrap();
        let explicit = product_recurrence(&fx, &fy, 3, 2).unwrap();
        assert_eq!(generic, explicit);
        assert!(verify_three_term(&explicit, &basis, l.points()).unwrap().pass());
        assert!(rank_condition(&explicit).iter().all(|r| r.pass()));
    }

    #[test]
    fn shape_regimes() {
        let fx = hahn(int(0), int(0), 3);
        let fy = hahn(int(0), int(0), 1);
        for k in 0..1 {
            assert_eq!(product_recurrence_blocks(&fx, &fy, 3, 1, k, 0).unwrap().shape(), (k + 1, k + 2));
        }
        for k in 1..3 {
            let a2 = product_recurrence_blocks(&fx, &fy, 3, 1, k, 1).unwrap();
            assert_eq!(a2.shape(), (2, 2));
            assert!(a2.row(0).iter().all(num::Zero::is_zero));
            assert!(exactlinalg::rank(&a2) < 2);
        }
        let a = product_recurrence_blocks(&fx, &fy, 3, 1, 3, 0).unwrap();
        assert_eq!(a.shape(), (2, 1));
        assert!(product_recurrence_blocks(&fx, &fy, 3, 1, 4, 0).is_err());
    }
}
