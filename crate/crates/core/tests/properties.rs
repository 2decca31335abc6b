use discrete_orthopoly::exactlinalg::{determinant, left_inverse, rank, symmetric_factor, RatMatrix};
use discrete_orthopoly::orthogonalize::{construct_orthogonal, Scaling};
use discrete_orthopoly::rational::rat;
use discrete_orthopoly::recurrence::{
    commute_check, compute_recurrence, jacobi_operators, rank_condition, verify_three_term,
};
use discrete_orthopoly::staircase::{compute_staircase, eval_matrix, normal_form};
use discrete_orthopoly::{LinalgError, MomentFunctional, MonomialOrder, MultiIndex, OrderKind, PointSet, Poly, Rational};
use num::Zero;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |v| RatMatrix::new(rows, cols, v))
}

fn any_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn point_set(dim: usize, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set(prop::collection::vec(-3i64..=3, dim), 1..=max).prop_map(move |pts| {
        let rows: Vec<Vec<Rational>> = pts.into_iter().map(|p| p.into_iter().map(|v| rat(v, 1)).collect()).collect();
        PointSet::new(dim, rows).unwrap()
    })
}

fn order() -> impl Strategy<Value = OrderKind> {
    prop_oneof![Just(OrderKind::GradedLex), Just(OrderKind::GradedRevLex)]
}

fn poly(dim: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, dim), entry()), 0..6).prop_map(move |terms| {
        Poly::from_terms(dim, terms.into_iter().map(|(e, c)| (MultiIndex::new(e), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in any_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn symmetric_factor_recomposes(a in (1usize..=4).prop_flat_map(|n| matrix(n, n))) {
        let m = &a * &a.transpose();
        match symmetric_factor(&m) {
            Ok((s, d)) => {
                prop_assert_eq!(&(&s * &d) * &s.transpose(), m);
                for i in 0..s.rows() {
                    prop_assert_eq!(s.get(i, i), &rat(1, 1));
                    for j in i + 1..s.cols() {
                        prop_assert!(s.get(i, j).is_zero());
                    }
                }
            }
            Err(LinalgError::PivotBreakdown(_)) => prop_assert!(rank(&m) < m.rows()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn left_inverse_is_a_left_inverse(m in (1usize..=3, 0usize..=3).prop_flat_map(|(c, extra)| matrix(c + extra, c))) {
        match left_inverse(&m) {
            Ok(l) => prop_assert_eq!(&l * &m, RatMatrix::identity(m.cols())),
            Err(_) => prop_assert!(rank(&m) < m.cols()),
        }
    }

    #[test]
    fn staircases_are_lower_sets(v in point_set(2, 9), kind in order()) {
        let lam = compute_staircase(&v, &MonomialOrder::new(kind, 2)).unwrap();
        prop_assert!(lam.is_lower_set());
        prop_assert_eq!(lam.len(), v.len());
        let e = eval_matrix(&v, lam.indices()).unwrap();
        prop_assert!(!determinant(&e).unwrap().is_zero());
        let sizes = lam.block_sizes();
        for k in 0..sizes.len() - 1 {
            prop_assert!(2 * sizes[k] >= sizes[k + 1]);
        }
    }

    #[test]
    fn staircases_in_three_variables(v in point_set(3, 8)) {
        let lam = compute_staircase(&v, &MonomialOrder::grevlex(3)).unwrap();
        prop_assert!(lam.is_lower_set());
        prop_assert_eq!(lam.len(), v.len());
        let sizes = lam.block_sizes();
        for k in 0..sizes.len() - 1 {
            prop_assert!(3 * sizes[k] >= sizes[k + 1]);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(v in point_set(2, 7), p in poly(2), q in poly(2), c in entry()) {
        let lam = compute_staircase(&v, &MonomialOrder::grevlex(2)).unwrap();
        let nf = |f: &Poly| normal_form(f, &v, &lam).unwrap();
        let np = nf(&p);
        prop_assert_eq!(nf(&np), np.clone());
        prop_assert!(np.support().all(|a| lam.contains(a)));
        for x in v.points() {
            prop_assert_eq!(np.eval(x), p.eval(x));
        }
        let combo = &p + &q.scale(&c);
        prop_assert_eq!(nf(&combo), &np + &nf(&q).scale(&c));
    }

    #[test]
    fn six_point_pipeline(v in point_set(2, 6).prop_filter("six points", |v| v.len() == 6),
                          w in prop::collection::vec((1i64..=9, 1i64..=4), 6)) {
        let weights = discrete_orthopoly::WeightFn::new(w.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap();
        let l = MomentFunctional::new(v, weights).unwrap();
        let lam = compute_staircase(l.points(), &MonomialOrder::grevlex(2)).unwrap();
        let basis = construct_orthogonal(&l, &lam, Scaling::Canonical).unwrap();
        prop_assert!(basis.orthogonality_report(&l).pass());
        let rec = compute_recurrence(&basis, &l).unwrap();
        prop_assert!(verify_three_term(&rec, &basis, l.points()).unwrap().pass());
        prop_assert!(rank_condition(&rec).iter().all(|r| r.pass()));
        prop_assert!(commute_check(&jacobi_operators(&rec).unwrap()).pass());
    }
}
