use crate::orthogonalize::{FloatBasis, MomentFunctional};
use crate::rational::to_f64;
use nalgebra::DMatrix;

/// Recurrence blocks of an orthonormal basis, where `H_k = I` and `C_{k+1,i} = A_{k,i}ᵀ`.
#[derive(Clone, Debug)]
pub struct FloatRecurrence {
    pub a: Vec<Vec<DMatrix<f64>>>,
    pub b: Vec<Vec<DMatrix<f64>>>,
    pub c: Vec<Vec<DMatrix<f64>>>,
}

impl FloatRecurrence {
    /// `max |C_{k+1,i} − A_{k,i}ᵀ|`.
    pub fn transpose_gap(&self) -> f64 {
        let mut worst = 0.0f64;
        for (k, ak) in self.a.iter().enumerate() {
            for (a, c) in ak.iter().zip(&self.c[k + 1]) {
                worst = worst.max((c - a.transpose()).abs().max());
            }
        }
        worst
    }

    /// Symmetric block tridiagonal `J_i` with `A_{k,i}` above and `A_{k,i}ᵀ` below the diagonal.
    pub fn jacobi(&self) -> Vec<DMatrix<f64>> {
        let sizes: Vec<usize> = self.b.iter().map(|bk| bk[0].nrows()).collect();
        let mut offsets = vec![0];
        for r in &sizes {
            offsets.push(offsets.last().unwrap() + r);
        }
        let total = *offsets.last().unwrap();
        (0..self.b[0].len())
            .map(|i| {
                let mut m = DMatrix::zeros(total, total);
                for k in 0..sizes.len() {
                    m.view_mut((offsets[k], offsets[k]), (sizes[k], sizes[k])).copy_from(&self.b[k][i]);
                    if k + 1 < sizes.len() {
                        let a = &self.a[k][i];
                        m.view_mut((offsets[k], offsets[k + 1]), a.shape()).copy_from(a);
                        m.view_mut((offsets[k + 1], offsets[k]), (a.ncols(), a.nrows())).copy_from(&a.transpose());
                    }
                }
                m
            })
            .collect()
    }
}

/// Recurrence of an orthonormal basis in floating point, from `𝓛(x_i ℙ_k ℙ_jᵀ)`.
pub fn compute_recurrence_f64(basis: &FloatBasis, l: &MomentFunctional) -> FloatRecurrence {
    let values = basis.values(l);
    let w: Vec<f64> = l.weights().values().iter().map(to_f64).collect();
    let pts: Vec<Vec<f64>> = l.points().points().iter().map(|x| x.iter().map(to_f64).collect()).collect();
    let moment = |i: usize, f: &[Vec<f64>], g: &[Vec<f64>]| {
        DMatrix::from_fn(f.len(), g.len(), |p, q| {
            (0..w.len()).map(|t| pts[t][i] * f[p][t] * g[q][t] * w[t]).sum()
        })
    };
    let n = values.len() - 1;
    let mut rec = FloatRecurrence { a: Vec::new(), b: Vec::new(), c: Vec::new() };
    for k in 0..=n {
        let dim = l.dim();
        if k < n {
            rec.a.push((0..dim).map(|i| moment(i, &values[k], &values[k + 1])).collect());
        }
        rec.b.push((0..dim).map(|i| moment(i, &values[k], &values[k])).collect());
        rec.c.push(
            (0..dim)
                .map(|i| if k == 0 { DMatrix::zeros(values[0].len(), 0) } else { moment(i, &values[k], &values[k - 1]) })
                .collect(),
        );
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonalize::orthonormalize;
    use crate::recurrence::tests::eight_points;

    #[test]
    fn orthonormal_blocks_are_transposes() {
        let (l, basis) = eight_points();
        let fb = orthonormalize(&basis, &l).unwrap();
        let rec = compute_recurrence_f64(&fb, &l);
        assert!(rec.transpose_gap() < 1e-12);
        let js = rec.jacobi();
        assert_eq!(js.len(), 2);
        assert!((&js[0] - js[0].transpose()).abs().max() < 1e-15);
        let comm = &js[0] * &js[1] - &js[1] * &js[0];
        assert!(comm.abs().max() < 1e-12);
    }
}
