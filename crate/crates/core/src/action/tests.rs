use super::*;
use crate::catcore::validate_groupoid;
use crate::fixtures;

#[test]
fn fixture_actions_valid() {
    for name in ["F1-flip", "F2", "F3"] {
        let spec = fixtures::action(name);
        let r = validate_action(&spec);
        assert!(r.is_valid(), "{name}: {r}");
        assert!(spec.alpha_inverse_laws(), "{name}");
    }
}

#[test]
fn fibers_and_regular_part() {
    let f2 = fixtures::action("F2");
    let u1 = f2.g.obj("u1").unwrap();
    let names = |v: Vec<usize>| v.into_iter().map(|m| f2.hname(m).to_string()).collect::<Vec<_>>();
    assert_eq!(names(f2.fiber(f2.g.identity(u1))), ["1_a"]);
    let hr = f2.regular_part();
    assert_eq!(hr.morphism_names(), ["1_a", "1_b"]);
    assert!(!f2.is_regular());

    let f1 = fixtures::action("F1-flip");
    let g = f1.g.mor("g").unwrap();
    assert_eq!(f1.fiber(g).len(), 4);
    assert_eq!(f1.regular_part().morphism_count(), 4);
}

#[test]
fn semidirect_sizes() {
    let f1 = semidirect(&fixtures::action("F1-flip")).unwrap();
    assert_eq!(f1.len(), 8);
    assert!(validate_groupoid(f1.groupoid.as_ref().unwrap()).is_valid());

    let f2 = semidirect(&fixtures::action("F2")).unwrap();
    assert_eq!(f2.cat.morphism_names(), ["(1_a|u1)", "(1_b|u2)"]);
    assert!(f2.cat.morphisms().all(|m| f2.cat.is_identity(m)));

    for name in ["F1-flip", "F2", "F3"] {
        assert_eq!(semidirect_equals_regular(&fixtures::action(name)).unwrap(), (true, None));
    }
}

#[test]
fn trivial_groupoid_gives_regular_part() {
    // G = one unit acting trivially: H x G is H itself, relabelled.
    let h = fixtures::groupoid("F1");
    let spec = ActionSpec::trivial(h.category().clone());
    assert!(validate_action(&spec).is_valid());
    let sd = semidirect(&spec).unwrap();
    assert!(crate::catcore::find_isomorphism(&sd.cat, &h).is_some());
}

#[test]
fn class_restriction_of_f3() {
    let spec = fixtures::action("F3");
    let orbits = spec.g.orbit_relation();
    assert_eq!(orbits.len(), 2);
    let big = spec.restrict_to_class(&orbits.classes[0]).unwrap();
    assert_eq!(big.g.morphism_count(), 8);
    assert_eq!(big.h.morphism_count(), 8);
    let small = spec.restrict_to_class(&orbits.classes[1]).unwrap();
    assert_eq!(small.g.morphism_count(), 1);
    assert_eq!(small.h.morphism_names(), ["1_zc"]);
    assert!(matches!(spec.restrict_to_class(&[0]), Err(ActionError::UnknownClass(_))));
    assert!(matches!(
        fixtures::action("F2").restrict_to_class(&[0]),
        Err(ActionError::NotRegular(_))
    ));
}

#[test]
fn flip_with_fixed_f_breaks_axiom_one() {
    let mut spec = fixtures::action("F1-flip");
    let (g, f) = (spec.g.mor("g").unwrap(), spec.h.mor("f").unwrap());
    spec.alpha_mor.insert((g, f), f);
    let r = validate_action(&spec);
    assert!(r.cites_at(Rule::AxiomI, &["g", "f"]), "{r}");
}
