use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::action::{semidirect_equals_regular, validate_action, ActionSpec};
use crate::catcore::validate_groupoid;
use crate::fixtures;
use crate::staralg::{check_representation, left_regular};

#[test]
fn disjointness_on_fixtures() {
    for name in ["F1-flip", "F2", "F3"] {
        let r = verify_disjointness_criterion(&fixtures::action(name), name);
        assert!(r.passed(), "{r}");
        assert!(r.observables["pairs"] > 0);
    }
}

#[test]
fn main_theorem_on_fixtures() {
    for name in ["F1-flip", "F3"] {
        let r = verify_main_theorem(&fixtures::action(name), None, name);
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
        assert!(r.notes.is_empty(), "{name}: {:?}", r.notes);
        assert_eq!(r.observables["span_dim_semidirect"], r.observables["span_dim_crossed"]);
    }
    let r = verify_main_theorem(&fixtures::action("F2"), None, "F2");
    assert_eq!(r.verdict, Verdict::Pass, "{r}");
    assert!(r.notes.iter().any(|n| n.contains("proper subcategory")), "{:?}", r.notes);
}

#[test]
fn main_theorem_with_trivial_groupoid() {
    let spec = ActionSpec::trivial(fixtures::groupoid("F1").category().clone());
    let r = verify_main_theorem(&spec, None, "trivial");
    assert!(r.passed(), "{r}");
}

#[test]
fn main_theorem_rejects_a_broken_representation() {
    let spec = fixtures::action("F1-flip");
    let sd = crate::action::semidirect(&spec).unwrap();
    let lam = left_regular(&sd.cat);
    let broken = lam.with_matrix(0, lam.s(0).adjoint().scale(crate::Gq::int(2)));
    let r = verify_main_theorem(&spec, Some(&broken), "broken");
    assert_eq!(r.verdict, Verdict::Fail, "{r}");
}

#[test]
fn decomposition_of_f3_has_two_blocks() {
    let spec = fixtures::action("F3");
    let d = decompose(&spec, &left_regular(&spec.h)).unwrap();
    assert_eq!(d.blocks.len(), 2);
    let r = verify_decomposition(&spec, None, "F3", DecompOptions::default());
    assert!(r.passed(), "{r}");
}

#[test]
fn decomposition_of_a_single_class() {
    let r = verify_decomposition(&fixtures::action("F1-flip"), None, "F1-flip", DecompOptions::default());
    assert!(r.passed(), "{r}");
}

#[test]
fn fuzzer_is_deterministic() {
    let a = fuzz_instances(3, 20, SizeCaps::default());
    let b = fuzz_instances(3, 20, SizeCaps::default());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.seed, y.seed);
        assert_eq!(x.spec.tables(), y.spec.tables());
        assert_eq!(x.spec.h.morphism_names(), y.spec.h.morphism_names());
    }
}

#[test]
fn fuzzed_specs_are_valid_and_varied() {
    let caps = SizeCaps::default();
    let all = fuzz_instances(0, 200, caps);
    let mut non_regular = 0;
    let mut multi_class = 0;
    for inst in &all {
        let r = validate_action(&inst.spec);
        assert!(r.is_valid(), "instance {}: {r}", inst.id);
        assert!(inst.spec.g.morphism_count() <= caps.max_g);
        assert!(inst.spec.h.morphism_count() <= caps.max_h);
        assert!(semidirect_equals_regular(&inst.spec).unwrap().0);
        non_regular += usize::from(!inst.spec.is_regular());
        multi_class += usize::from(inst.spec.g.orbit_relation().len() > 1);
    }
    assert!(non_regular >= 50, "{non_regular}");
    assert!(multi_class >= 30, "{multi_class}");
}

#[test]
fn fuzzed_groupoids() {
    for g in fuzz_groupoids(0, 100, 12) {
        assert!(g.morphism_count() <= 12);
        assert!(validate_groupoid(&g).is_valid());
        assert!(check_representation(&left_regular(g.category())).is_valid());
    }
}

#[test]
fn tiny_caps_fall_back() {
    let spec = random_instance(&mut ChaCha8Rng::seed_from_u64(1), SizeCaps { max_g: 1, max_h: 1 });
    assert!(validate_action(&spec).is_valid());
    assert_eq!(spec.h.morphism_count(), 1);
}

#[test]
fn theorems_hold_on_fuzzed_instances() {
    for inst in fuzz_instances(11, 40, SizeCaps { max_g: 8, max_h: 10 }) {
        let d = verify_disjointness_criterion(&inst.spec, "fuzz");
        let m = verify_main_theorem(&inst.spec, None, "fuzz");
        let r = verify_decomposition(&inst.spec, None, "fuzz", DecompOptions::default());
        assert!(d.passed(), "{}: {d}", inst.id);
        assert_eq!(m.verdict, Verdict::Pass, "{}: {m}", inst.id);
        assert!(r.passed(), "{}: {r}", inst.id);
    }
}
