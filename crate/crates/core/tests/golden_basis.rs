use discrete_orthopoly::orthogonalize::{construct_orthogonal, Scaling};
use discrete_orthopoly::rational::int;
use discrete_orthopoly::staircase::{compute_staircase, MonomialOrder, MultiIndex, PointSet, Poly};
use discrete_orthopoly::MomentFunctional;

fn p(terms: &[(i64, u32, u32)]) -> Poly {
    Poly::from_terms(2, terms.iter().map(|&(c, a, b)| (MultiIndex::new(vec![a, b]), int(c))))
}

fn reference() -> Vec<Vec<Poly>> {
    vec![
        vec![p(&[(1, 0, 0)])],
        vec![p(&[(1, 0, 0), (4, 1, 0)]), p(&[(3, 0, 0), (12, 1, 0), (22, 0, 1)])],
        vec![
            p(&[(-26, 0, 0), (1, 1, 0), (35, 2, 0), (-4, 0, 1)]),
            p(&[(3, 0, 0), (3, 1, 0), (1, 2, 0), (6, 0, 1), (8, 1, 1)]),
            p(&[(-20, 0, 0), (31, 1, 0), (-1, 2, 0), (11, 0, 1), (60, 1, 1), (51, 0, 2)]),
        ],
        vec![
            p(&[(-20, 0, 0), (3, 1, 0), (27, 2, 0), (-45, 0, 1), (4, 1, 1), (56, 2, 1), (-5, 0, 2)]),
            p(&[(-9, 1, 0), (9, 2, 0), (-50, 0, 1), (-12, 1, 1), (12, 2, 1), (-30, 0, 2), (20, 0, 3)]),
        ],
    ]
}

fn points() -> Vec<[i64; 2]> {
    vec![[-1, -1], [0, -1], [1, -1], [-1, 0], [0, 0], [1, 0], [-1, 1], [-1, 2]]
}

fn functional(shift: i64) -> MomentFunctional {
    let pts: Vec<Vec<i64>> = points().iter().map(|q| vec![q[0] + shift, q[1] + shift]).collect();
    let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
    MomentFunctional::uniform(PointSet::from_i64(2, &refs).unwrap())
}

#[test]
fn eight_reference_polynomials() {
    let l = functional(0);
    let lam = compute_staircase(l.points(), &MonomialOrder::grevlex(2)).unwrap();
    let basis = construct_orthogonal(&l, &lam, Scaling::Canonical).unwrap();
    assert_eq!(basis.block_sizes(), vec![1, 2, 3, 2]);
    assert_eq!(basis.blocks(), reference().as_slice());
    assert!(basis.orthogonality_report(&l).pass());
}

#[test]
fn other_order_gives_another_orthogonal_basis() {
    let l = functional(0);
    let lam = compute_staircase(l.points(), &MonomialOrder::grlex(2)).unwrap();
    let basis = construct_orthogonal(&l, &lam, Scaling::Canonical).unwrap();
    assert_eq!(basis.block_sizes(), vec![1, 2, 3, 2]);
    assert!(basis.orthogonality_report(&l).pass());
    assert_ne!(basis.blocks(), reference().as_slice());
}

#[test]
fn lattice_translate() {
    // On V + (1, 1) the basis is P(x - 1, y - 1).
    let l = functional(1);
    let lam = compute_staircase(l.points(), &MonomialOrder::grevlex(2)).unwrap();
    let basis = construct_orthogonal(&l, &lam, Scaling::Canonical).unwrap();
    let shift = [int(-1), int(-1)];
    for (got, want) in basis.blocks().iter().zip(reference()) {
        for (g, w) in got.iter().zip(want) {
            let t = w.translate(&shift);
            let ratio = t.coeff(g.terms().next().unwrap().0) / g.terms().next().unwrap().1;
            assert!(ratio > int(0));
            assert_eq!(g.scale(&ratio), t);
        }
    }
}
