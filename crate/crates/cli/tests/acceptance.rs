//! End-to-end acceptance checks. Each test prints one line per criterion:
//! `criterion N: PASS|FAIL <summary>`. Every identity is compared exactly; the only
//! floating-point comparison is the advisory norm bound, whose slack is pinned below.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gcat_core::action::{semidirect, semidirect_equals_regular, validate_action, ActionSpec};
use gcat_core::catcore::{round_trip, validate_groupoid};
use gcat_core::fixtures;
use gcat_core::io::{check_mutant, validate_document, Resolver};
use gcat_core::quasidyn::{check_quasi, conv_mul, conv_star, embedding_check, induce_quasi_action, integrate, inverse_law_failures, regular_covariant, ConvElement, QuasiSystem};
use gcat_core::staralg::{check_representation, left_regular, operator_norm_upper, MatrixRep};
use gcat_core::theorems::{decompose, fuzz_groupoids, fuzz_instances, verify_decomposition, verify_disjointness_criterion, verify_main_theorem, DecompOptions, SizeCaps, Verdict};
use gcat_core::Rule;

/// Exact arithmetic: identities are compared with `==`, so the tolerance is zero.
const EXACT_TOLERANCE: u32 = 0;
/// Slack on the advisory bound `‖σ(f)‖ ≤ Σ‖π(a_t)‖`, which is computed in floating point.
const NORM_SLACK: f64 = 1e-6;

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(30);
const C3_LIMIT: Duration = Duration::from_secs(60);
const C8_LIMIT: Duration = Duration::from_secs(300);

const FUZZ_SEED: u64 = 0;
const SMALL: SizeCaps = SizeCaps { max_g: 6, max_h: 8 };

/// Written to the real stdout, past the test harness capture, so the lines show up in plain `cargo test` logs.
fn report(n: u32, ok: bool, summary: String) {
    let line = format!("criterion {n}: {} {summary}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {summary}");
}

fn fixture_actions() -> Vec<(&'static str, ActionSpec)> {
    vec![
        ("F1", ActionSpec::trivial(fixtures::groupoid("F1").category().clone())),
        ("F1-flip", fixtures::action("F1-flip")),
        ("F2", fixtures::action("F2")),
        ("F3", fixtures::action("F3")),
    ]
}

#[test]
fn criterion_01_axiom_suites() {
    let t = Instant::now();
    let clean = [
        "F1.groupoid.json",
        "Z2.groupoid.json",
        "U2.groupoid.json",
        "F1-flip.action.json",
        "F2.category.json",
        "F2.action.json",
        "F3.bundle.json",
        "F3.groupoid.json",
        "F3H.category.json",
        "F3.action.json",
        "F4.category.json",
    ];
    let mut bad = Vec::new();
    for name in clean {
        if !validate_document(&fixtures::document(name)).is_valid() {
            bad.push(name.to_string());
        }
    }
    let mut caught = 0;
    for (name, text) in fixtures::mutants() {
        let m = check_mutant(text, name, &Resolver::builtin()).expect("mutant parses");
        if m.caught {
            caught += 1;
        } else {
            bad.push(format!("{name} (expected {}, cited {:?})", m.expect, m.cited));
        }
    }
    let elapsed = t.elapsed();
    let ok = bad.is_empty() && caught >= 10 && elapsed < C1_LIMIT;
    report(1, ok, format!("{} fixtures accepted, {caught} mutants rejected with the expected rule, {elapsed:?} (limit {C1_LIMIT:?}) {bad:?}", clean.len()));
}

#[test]
fn criterion_02_bundle_round_trip() {
    let t = Instant::now();
    let groupoids = fuzz_groupoids(FUZZ_SEED, 200, 12);
    let mut failures = 0;
    for g in &groupoids {
        assert!(g.morphism_count() <= 12);
        match round_trip(g) {
            Ok(rt) if rt.iso_verified && rt.bundle_fixed => {}
            _ => failures += 1,
        }
    }
    let elapsed = t.elapsed();
    report(2, failures == 0 && groupoids.len() >= 200 && elapsed < C2_LIMIT, format!("{} groupoids, {failures} failures, {elapsed:?} (limit {C2_LIMIT:?})", groupoids.len()));
}

#[test]
fn criterion_03_disjointness_criterion() {
    let t = Instant::now();
    let fuzzed = fuzz_instances(FUZZ_SEED, 200, SMALL);
    let mut disagreements = 0;
    let mut pairs = 0;
    let specs = fixture_actions().into_iter().map(|(n, s)| (n.to_string(), s)).chain(fuzzed.into_iter().map(|i| (format!("fuzz#{}", i.id), i.spec)));
    let mut count = 0;
    for (name, spec) in specs {
        if name.starts_with("fuzz") {
            assert!(spec.g.morphism_count() <= SMALL.max_g && spec.h.morphism_count() <= SMALL.max_h);
        }
        let r = verify_disjointness_criterion(&spec, &name);
        disagreements += r.checks.iter().map(|c| c.failures).sum::<usize>();
        pairs += r.observables.get("pairs").copied().unwrap_or(0);
        count += 1;
    }
    let elapsed = t.elapsed();
    report(3, disagreements == 0 && count >= 204 && elapsed < C3_LIMIT, format!("{count} specs, {pairs} pairs, {disagreements} disagreements, {elapsed:?} (limit {C3_LIMIT:?})"));
}

#[test]
fn criterion_04_regular_part_reduction() {
    let fuzzed = fuzz_instances(FUZZ_SEED, 300, SMALL);
    let mut mismatches = Vec::new();
    let mut proper = 0;
    for inst in &fuzzed {
        let (same, witness) = semidirect_equals_regular(&inst.spec).expect("fuzzed specs are valid");
        if !same {
            mismatches.push((inst.id, witness));
        }
        proper += usize::from(inst.spec.regular_part().morphism_count() < inst.spec.h.morphism_count());
    }
    report(4, mismatches.is_empty() && proper >= 50, format!("{} specs ({proper} with H_r a proper subcategory), mismatches {mismatches:?}", fuzzed.len()));
}

/// `Q_f P_g = 0` for every non-composable pair, checked directly.
fn off_composable_zero(rep: &MatrixRep) -> bool {
    let cat = &rep.cat;
    cat.morphisms().all(|f| cat.morphisms().filter(|&g| !cat.composable(f, g)).all(|g| rep.q(f).mul(rep.p(g)).is_zero()))
}

#[test]
fn criterion_05_representation_checker() {
    let mut failing = 0;
    let mut passing_reps = Vec::new();
    let groupoids = fuzz_groupoids(FUZZ_SEED, 200, 12);
    for g in &groupoids {
        let rep = left_regular(g.category());
        if check_representation(&rep).is_valid() {
            passing_reps.push(rep);
        } else {
            failing += 1;
        }
    }
    for cat in [fixtures::category("F2"), fixtures::category("F4"), fixtures::action("F3").h] {
        let rep = left_regular(&cat);
        if check_representation(&rep).is_valid() {
            passing_reps.push(rep);
        }
    }
    for (_, spec) in fixture_actions() {
        let rep = left_regular(&semidirect(&spec).unwrap().cat);
        if check_representation(&rep).is_valid() {
            passing_reps.push(rep);
        }
    }
    let n3 = check_representation(&left_regular(&fixtures::category("N3")));
    let n3_ok = n3.rules() == [Rule::PartialIsometry];
    let off_zero = passing_reps.iter().filter(|r| !off_composable_zero(r)).count();
    report(
        5,
        failing == 0 && n3_ok && off_zero == 0,
        format!(
            "{} fuzzed groupoids ({failing} rejected); N3 cites {:?}; off-composable Q_f P_g = 0 on all {} passing reps ({off_zero} exceptions, tolerance {EXACT_TOLERANCE})",
            groupoids.len(),
            n3.rules(),
            passing_reps.len()
        ),
    );
}

#[test]
fn criterion_06_quasi_action_laws() {
    let mut systems = vec![("F1-flip".to_string(), fixtures::action("F1-flip"))];
    systems.extend(fuzz_instances(FUZZ_SEED, 400, SMALL).into_iter().filter(|i| i.spec.is_regular()).take(100).map(|i| (format!("fuzz#{}", i.id), i.spec)));
    let mut failures = Vec::new();
    for (name, spec) in &systems {
        let sys = induce_quasi_action(spec, &left_regular(&spec.h)).expect("regular spec induces");
        let r = check_quasi(&sys);
        let inv = inverse_law_failures(&sys);
        if !r.is_valid() || !inv.is_empty() {
            failures.push(format!("{name}: {r} {inv:?}"));
        }
    }
    report(6, failures.is_empty() && systems.len() >= 101, format!("{} systems, failures {failures:?}", systems.len()));
}

#[test]
fn criterion_07_integrated_form() {
    let systems: Vec<(&str, QuasiSystem)> = fixture_actions()
        .into_iter()
        .map(|(n, s)| {
            let s = s.regular_spec();
            let sys = induce_quasi_action(&s, &left_regular(&s.h)).expect("fixture induces");
            (n, sys)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let mut pairs = 0;
    let mut bad = Vec::new();
    for round in 0..130 {
        for (name, sys) in &systems {
            let cr = regular_covariant(sys, sys.basis(), sys.size());
            let sigma = |f: &ConvElement| integrate(sys, &cr, f);
            let f = ConvElement::random(sys, &mut rng, 0.5);
            let h = ConvElement::random(sys, &mut rng, 0.5);
            let fh = conv_mul(sys, &f, &h).unwrap();
            let fs = conv_star(sys, &f).unwrap();
            if sigma(&fh) != sigma(&f).mul(&sigma(&h)) || sigma(&fs) != sigma(&f).adjoint() {
                bad.push(format!("{name} round {round}"));
            }
            let bound: f64 = f.terms().values().map(|a| operator_norm_upper(&cr.pi(sys, a))).sum();
            if operator_norm_upper(&sigma(&f)) > bound + NORM_SLACK {
                bad.push(format!("{name} round {round}: norm bound"));
            }
            pairs += 1;
        }
    }
    let mut injective = 0;
    for (name, sys) in &systems {
        let e = embedding_check(sys, sys.basis(), sys.size());
        if e.report.is_valid() && e.rank == e.dim {
            injective += 1;
        } else {
            bad.push(format!("{name}: {}", e.report));
        }
    }
    report(
        7,
        bad.is_empty() && pairs >= 500 && injective == systems.len(),
        format!("{pairs} pairs over {} fixture systems, embedding injective on {injective}, norm slack {NORM_SLACK}, failures {bad:?}", systems.len()),
    );
}

#[test]
fn criterion_08_main_theorem() {
    let t = Instant::now();
    let mut fixtures_ok = true;
    let mut f2_note = false;
    for name in ["F1-flip", "F2", "F3"] {
        let r = verify_main_theorem(&fixtures::action(name), None, name);
        fixtures_ok &= r.verdict == Verdict::Pass;
        f2_note |= name == "F2" && r.notes.iter().any(|n| n.contains("proper subcategory"));
    }
    let (mut pass, mut fail, mut inapplicable) = (0, 0, 0);
    for inst in fuzz_instances(FUZZ_SEED, 120, SMALL) {
        match verify_main_theorem(&inst.spec, None, "fuzz").verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Inapplicable => inapplicable += 1,
        }
    }
    let elapsed = t.elapsed();
    report(
        8,
        fixtures_ok && f2_note && fail == 0 && pass >= 100 && elapsed < C8_LIMIT,
        format!("fixtures pass: {fixtures_ok} (F2 notes H_r proper: {f2_note}); fuzzed {pass} pass, {fail} fail, {inapplicable} inapplicable; {elapsed:?} (limit {C8_LIMIT:?})"),
    );
}

#[test]
fn criterion_09_decomposition() {
    let mut specs = vec![("F3".to_string(), fixtures::action("F3"))];
    specs.extend(
        fuzz_instances(FUZZ_SEED, 600, SMALL)
            .into_iter()
            .filter(|i| i.spec.is_regular() && i.spec.g.orbit_relation().len() > 1)
            .take(50)
            .map(|i| (format!("fuzz#{}", i.id), i.spec)),
    );
    let mut failures = Vec::new();
    for (name, spec) in &specs {
        let blocks = decompose(spec, &left_regular(&spec.h)).map(|d| d.blocks.len()).unwrap_or(0);
        let r = verify_decomposition(spec, None, name, DecompOptions::default());
        if !r.passed() || blocks != spec.g.orbit_relation().len() {
            failures.push(format!("{r}"));
        }
    }
    report(9, failures.is_empty() && specs.len() >= 51, format!("{} specs (F3 and {} fuzzed multi-class regular), failures {failures:?}", specs.len(), specs.len() - 1));
}

fn gcat() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gcat"))
}

#[test]
fn criterion_10_determinism() {
    let run = || {
        let out = gcat().args(["fuzz", "--seed", "7", "--budget", "100", "--format", "json"]).output().expect("gcat runs");
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let (a, b) = (run(), run());
    let parsed: serde_json::Value = serde_json::from_slice(&a).expect("fuzz emits JSON");
    let n = parsed["instances"].as_array().map_or(0, Vec::len);
    report(10, a == b && n == 100, format!("two runs of fuzz --seed 7 --budget 100: {} bytes, identical: {}", a.len(), a == b));
}

#[test]
fn cli_exit_codes() {
    let status = |args: &[&str]| gcat().args(args).output().expect("gcat runs");
    assert_eq!(status(&["validate", "@F1.groupoid.json"]).status.code(), Some(0));

    let f2 = status(&["verify-main", "@F2.action.json", "--format", "json"]);
    assert_eq!(f2.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&f2.stdout).unwrap();
    assert!(j["notes"].to_string().contains("proper subcategory"), "{j}");

    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &fixtures::text("F1.groupoid.json").unwrap()[..40]).unwrap();
    let out = status(&["validate", truncated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");

    let rep = status(&["leftreg", "@N3.category.json"]);
    assert_eq!(rep.status.code(), Some(1));
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/F1.groupoid.json");
    std::fs::copy(&src, dir.path().join("mine.json")).unwrap();
    let out = gcat().env("GCAT_FIXTURES", dir.path()).args(["validate", "@mine.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let missing = gcat().env("GCAT_FIXTURES", dir.path()).args(["validate", "@F1.groupoid.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn fuzzed_specs_are_valid_actions() {
    for inst in fuzz_instances(FUZZ_SEED, 50, SMALL) {
        assert!(validate_action(&inst.spec).is_valid());
        assert!(validate_groupoid(&inst.spec.g).is_valid());
    }
}
