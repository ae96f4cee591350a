use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures;
use crate::staralg::{left_regular, operator_norm_upper};

fn induced(name: &str) -> QuasiSystem {
    let spec = fixtures::action(name);
    induce_quasi_action(&spec, &left_regular(&spec.h)).unwrap()
}

fn trivial() -> QuasiSystem {
    let spec = ActionSpec::trivial(fixtures::groupoid("F1").into_category());
    induce_quasi_action(&spec, &left_regular(&spec.h)).unwrap()
}

#[test]
fn trivial_group_acts_as_identity() {
    let sys = trivial();
    assert!(check_quasi(&sys).is_valid());
    assert_eq!(sys.algebra().dim(), 4);
    for x in sys.domain(0).basis() {
        assert_eq!(&sys.beta(0, x), x);
    }
}

#[test]
fn f1_flip_system() {
    let sys = induced("F1-flip");
    let r = check_quasi(&sys);
    assert!(r.is_valid(), "{r}");
    assert!(inverse_law_failures(&sys).is_empty());
    let g = sys.g.mor("g").unwrap();
    let (sf, sf_inv) = (sys.generator("f").unwrap(), sys.generator("f'").unwrap());
    assert_eq!(&sys.beta(g, sf), sf_inv);
}

#[test]
fn f3_domains_split_by_class() {
    let sys = induced("F3");
    let r = check_quasi(&sys);
    assert!(r.is_valid(), "{r}");
    assert!(inverse_law_failures(&sys).is_empty());
    let g = &sys.g;
    let (x, z) = (g.identity(g.obj("x").unwrap()), g.identity(g.obj("z").unwrap()));
    assert_eq!(sys.domain(x).dim(), 4);
    assert_eq!(sys.domain(z).dim(), 1);
    for b in sys.basis_images(x) {
        assert!(sys.beta(z, b).is_zero());
    }
}

#[test]
fn dropped_domain_vector_breaks_range_condition() {
    let sys = induced("F1-flip");
    let e = sys.g.mor("u").unwrap();
    let basis = sys.domain(e).basis();
    let smaller = crate::linalg::MatrixSpace::spanned_by(sys.size(), &basis[1..]);
    let broken = sys.with_domain(e, smaller);
    let r = check_quasi(&broken);
    assert!(r.cites(Rule::RangeIsDomain), "{r}");
}

#[test]
fn conv_examples() {
    let sys = induced("F1-flip");
    let e = sys.g.mor("u").unwrap();
    let a = sys.generator("f").unwrap().add(sys.generator("1_a").unwrap());
    let f = ConvElement::monomial(&sys, a.clone(), e).unwrap();
    let sq = conv_mul(&sys, &f, &f).unwrap();
    assert_eq!(sq, ConvElement::monomial(&sys, a.mul(&a), e).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = ConvElement::random(&sys, &mut rng, 0.7);
        assert_eq!(conv_star(&sys, &conv_star(&sys, &f).unwrap()).unwrap(), f);
    }
}

#[test]
fn disjoint_supports_multiply_to_zero() {
    let sys = induced("F3");
    let g = &sys.g;
    let (x, z) = (g.identity(g.obj("x").unwrap()), g.identity(g.obj("z").unwrap()));
    let a = sys.domain(x).basis()[0].clone();
    let b = sys.domain(z).basis()[0].clone();
    let f = ConvElement::monomial(&sys, a, x).unwrap();
    let h = ConvElement::monomial(&sys, b, z).unwrap();
    assert!(conv_mul(&sys, &f, &h).unwrap().is_zero());
}

#[test]
fn membership_is_enforced() {
    let sys = induced("F3");
    let g = &sys.g;
    let z = g.identity(g.obj("z").unwrap());
    let a = sys.domain(g.identity(g.obj("x").unwrap())).basis()[0].clone();
    assert!(matches!(ConvElement::monomial(&sys, a, z), Err(ConvError::NotInDomain(_))));
}

#[test]
fn conv_json_round_trip() {
    let sys = induced("F1-flip");
    let f = ConvElement::random(&sys, &mut ChaCha8Rng::seed_from_u64(1), 1.0);
    let j = crate::io::to_pretty_json(&f.to_json(&sys));
    let back: ConvJson = serde_json::from_str(&j).unwrap();
    assert_eq!(ConvElement::from_json(&sys, &back).unwrap(), f);
}

#[test]
fn trivial_covariant() {
    let sys = trivial();
    let cr = CovariantRep::inclusion(&sys, vec![ExactMatrix::identity(sys.size())]);
    assert!(check_covariant(&sys, &cr).is_valid());
    let reg = regular_covariant(&sys, sys.basis(), sys.size());
    assert_eq!(reg.dim, sys.size());
    assert_eq!(reg.pi_on_basis(), sys.basis());
    assert_eq!(reg.u(0), &ExactMatrix::identity(sys.size()));
}

#[test]
fn regular_covariant_of_f1() {
    let sys = induced("F1-flip");
    let d = sys.size();
    let cr = regular_covariant(&sys, sys.basis(), d);
    assert_eq!(cr.dim, 2 * d);
    let r = check_covariant(&sys, &cr);
    assert!(r.is_valid(), "{r}");
    let g = sys.g.mor("g").unwrap();
    let id = ExactMatrix::identity(d);
    let swap = id.embed(2 * d, 2 * d, 0, d).add(&id.embed(2 * d, 2 * d, d, 0));
    assert_eq!(cr.u(g), &swap);

    let bad = cr.with_u(g, ExactMatrix::zeros(2 * d, 2 * d));
    let r = check_covariant(&sys, &bad);
    assert!(r.cites(Rule::UHomomorphism), "{r}");
}

#[test]
fn regular_covariant_of_f3_vanishes_off_composable_blocks() {
    let sys = induced("F3");
    let d = sys.size();
    let cr = regular_covariant(&sys, sys.basis(), d);
    assert!(check_covariant(&sys, &cr).is_valid());
    let g = &sys.g;
    for t in g.morphisms() {
        for s in g.morphisms().filter(|&s| !g.composable(g.inv(t), s)) {
            assert!(cr.u(t).entries().all(|(i, _, _)| i / d != s), "u_t writes into block {s}");
        }
    }
}

fn sigma_laws(name: &str, pairs: usize, seed: u64) {
    let sys = induced(name);
    let cr = regular_covariant(&sys, sys.basis(), sys.size());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let f = ConvElement::random(&sys, &mut rng, 0.5);
        let h = ConvElement::random(&sys, &mut rng, 0.5);
        let fh = conv_mul(&sys, &f, &h).unwrap();
        assert_eq!(integrate(&sys, &cr, &fh), integrate(&sys, &cr, &f).mul(&integrate(&sys, &cr, &h)));
        let fs = conv_star(&sys, &f).unwrap();
        assert_eq!(integrate(&sys, &cr, &fs), integrate(&sys, &cr, &f).adjoint());
        let bound: f64 = f.terms().values().map(|a| operator_norm_upper(&cr.pi(&sys, a))).sum();
        assert!(operator_norm_upper(&integrate(&sys, &cr, &f)) <= bound + 1e-6);
    }
}

#[test]
fn integrated_form_is_a_star_homomorphism() {
    sigma_laws("F1-flip", 30, 11);
    sigma_laws("F3", 10, 12);
}

#[test]
fn unit_monomial_integrates_to_pi_times_u() {
    let sys = induced("F1-flip");
    let cr = regular_covariant(&sys, sys.basis(), sys.size());
    let e = sys.g.mor("u").unwrap();
    let a = sys.domain(e).basis()[0].clone();
    let f = ConvElement::monomial(&sys, a.clone(), e).unwrap();
    assert_eq!(integrate(&sys, &cr, &f), cr.pi(&sys, &a).mul(cr.u(e)));
}

#[test]
fn embedding_examples() {
    for name in ["F1-flip", "F3"] {
        let sys = induced(name);
        let emb = embedding_check(&sys, sys.basis(), sys.size());
        assert!(emb.report.is_valid(), "{name}: {}", emb.report);
        assert_eq!(emb.rank, emb.dim);
    }
    let sys = trivial();
    let emb = embedding_check(&sys, sys.basis(), sys.size());
    assert_eq!(emb.dim, sys.algebra().dim());

    let zero = vec![ExactMatrix::zeros(2, 2); sys.algebra().dim()];
    let emb = embedding_check(&sys, &zero, 2);
    assert!(emb.report.cites(Rule::PiFaithful) && emb.report.cites(Rule::SigmaInjective));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn convolution_is_associative_and_star_reverses(seed in any::<u64>()) {
        let sys = induced("F1-flip");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (ConvElement::random(&sys, &mut rng, 0.6), ConvElement::random(&sys, &mut rng, 0.6), ConvElement::random(&sys, &mut rng, 0.6));
        let m = |a: &ConvElement, b: &ConvElement| conv_mul(&sys, a, b).unwrap();
        let s = |a: &ConvElement| conv_star(&sys, a).unwrap();
        prop_assert_eq!(m(&m(&f, &g), &h), m(&f, &m(&g, &h)));
        prop_assert_eq!(s(&m(&f, &g)), m(&s(&g), &s(&f)));
    }
}
