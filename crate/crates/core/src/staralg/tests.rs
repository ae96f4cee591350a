use proptest::prelude::*;

use super::*;
use crate::catcore::FiniteGroupoid;
use crate::fixtures;
use crate::report::Rule;
use crate::scalar::Gq;

fn m(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_ints(rows)
}

#[test]
fn partial_isometry_examples() {
    assert!(is_partial_isometry(&ExactMatrix::zeros(3, 3)).unwrap());
    assert!(is_partial_isometry(&m(&[&[0, 1], &[0, 0]])).unwrap());
    assert!(!is_partial_isometry(&m(&[&[1, 1], &[0, 0]])).unwrap());
    assert!(is_partial_isometry(&ExactMatrix::zeros(2, 3)).is_err());
}

#[test]
fn zero_assignment_is_a_representation() {
    for cat in [fixtures::category("F4"), fixtures::category("N3"), fixtures::groupoid("F1").into_category()] {
        let s = vec![ExactMatrix::zeros(2, 2); cat.morphism_count()];
        let rep = MatrixRep::new(cat, 2, s).unwrap();
        assert!(check_representation(&rep).is_valid());
    }
}

#[test]
fn left_regular_of_f1() {
    let g = fixtures::groupoid("F1");
    let rep = left_regular(&g);
    assert_eq!(rep.dim(), 4);
    let r = check_representation(&rep);
    assert!(r.is_valid(), "{r}");
    for f in g.morphisms() {
        assert_eq!(rep.s(g.inv(f)), &rep.s(f).adjoint());
    }

    let f = g.mor("f").unwrap();
    let bad = rep.with_matrix(f, rep.s(f).adjoint());
    let r = check_representation(&bad);
    assert!(r.cites_at(Rule::Multiplicativity, &["f", "1_a"]), "{r}");
}

#[test]
fn one_identity_category() {
    let cat = FiniteGroupoid::from_category(
        crate::catcore::CategoryBuilder::new().object("o").morphism("1", "o", "o").identity("o", "1").compose("1", "1", "1").build().unwrap(),
    )
    .unwrap();
    assert_eq!(left_regular(&cat).s(0), &ExactMatrix::identity(1));
}

#[test]
fn non_left_cancellative_fails_at_partial_isometry_only() {
    let n3 = fixtures::category("N3");
    let r = check_representation(&left_regular(&n3));
    assert_eq!(r.rules(), vec![Rule::PartialIsometry]);
    assert!(r.cites_at(Rule::PartialIsometry, &["a"]));
}

#[test]
fn f4_left_regular_is_valid() {
    let r = check_representation(&left_regular(&fixtures::category("F4")));
    assert!(r.is_valid(), "{r}");
}

#[test]
fn lemma_examples() {
    let i = ExactMatrix::identity(2);
    assert!(minimality_check(&i, &i, &i).unwrap());
    let s = m(&[&[0, 1], &[0, 0]]);
    let (p, q) = (m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]]));
    assert!(minimality_check(&s, &p, &q).unwrap());
    assert!(adjoint_characterization(&s, &s.adjoint()).unwrap());
    assert!(adjoint_characterization(&s, &s).unwrap());
    // S = e11 + e22 with P = e11: hypothesis S = PS fails
    assert!(minimality_check(&i, &p, &i).unwrap());
    assert!(minimality_check(&m(&[&[1, 1], &[0, 0]]), &p, &q).is_err());
}

#[test]
fn disjoint_sums() {
    let (e12, e21, e13) = (ExactMatrix::unit(2, 0, 1), ExactMatrix::unit(2, 1, 0), ExactMatrix::unit(3, 0, 2));
    assert_eq!(sum_of_disjoint_partial_isometries(std::slice::from_ref(&e12)).unwrap(), e12);
    assert_eq!(sum_of_disjoint_partial_isometries(&[e12.clone(), e21]).unwrap(), m(&[&[0, 1], &[1, 0]]));
    let e12_3 = ExactMatrix::unit(3, 0, 1);
    assert_eq!(sum_of_disjoint_partial_isometries(&[e12_3, e13]), Err(LemmaError::FinalOverlap(0, 1)));
}

#[test]
fn norm_bounds() {
    assert_eq!(operator_norm_upper(&ExactMatrix::zeros(3, 3)), 0.0);
    let s = m(&[&[0, 1, 0], &[0, 0, 0], &[1, 0, 0]]);
    assert!((operator_norm_upper(&s) - 1.0).abs() < 1e-9);
    let d = ExactMatrix::diag(&[Gq::int(2), Gq::int(1)]);
    let n = operator_norm_upper(&d);
    assert!((2.0..2.0 + 1e-9).contains(&n));
}

#[test]
fn span_monotone_and_idempotent() {
    let g = fixtures::groupoid("F1");
    let rep = left_regular(&g);
    let gens = rep.matrices();
    let mut last = 0;
    for k in 0..=gens.len() {
        let basis = algebra_span(4, &gens[..k]);
        assert!(basis.len() >= last);
        last = basis.len();
        assert_eq!(algebra_span(4, &basis).len(), basis.len());
    }
    assert_eq!(last, 4);
}

fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec((0usize..3, 0usize..3, -2i64..3), 0..5)
        .prop_map(|t| ExactMatrix::from_triplets(3, 3, t.into_iter().map(|(i, j, v)| (i, j, Gq::int(v)))))
}

proptest! {
    #[test]
    fn span_contains_generators_and_is_closed(a in small_matrix(), b in small_matrix()) {
        let w = WordAlgebra::new(3, &[a.clone(), b.clone()]);
        for x in [&a, &b, &a.adjoint()] {
            prop_assert!(w.space().contains(x));
        }
        for x in w.basis() {
            for y in w.basis() {
                prop_assert!(w.space().contains(&x.mul(y)));
            }
        }
        // the identity substitution is always well defined
        prop_assert!(w.extend_letter_map(&[a, b]).is_ok());
    }

    #[test]
    fn unitary_conjugation_is_well_defined(a in small_matrix(), b in small_matrix(), perm in Just([2usize, 0, 1])) {
        let u = ExactMatrix::from_triplets(3, 3, perm.iter().enumerate().map(|(i, &j)| (j, i, Gq::int(1))));
        let ad = |x: &ExactMatrix| u.mul(x).mul(&u.adjoint());
        let w = WordAlgebra::new(3, &[a.clone(), b.clone()]);
        let img = w.extend_letter_map(&[ad(&a), ad(&b)]).unwrap();
        for (x, y) in w.basis().iter().zip(&img) {
            prop_assert_eq!(&ad(x), y);
        }
    }
}
